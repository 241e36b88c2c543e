"""Entry point for running tamlab as a module.

Usage:
    python -m tamlab [command] --group G [options]

Commands:
    marks       Table of marks
    lattice     Conjugacy classes of subgroups
    norm        nm_e^G(k)
    lemma       Marks of norms
    primes      Prime ideals containing an element
    unit        Units of A(G) and its localizations
    theorem     k is a unit in A(G)[1/nm(k)]
    axioms      Tambara axioms on an instance
    levels      Unit-ness of k at every level

Examples:
    python -m tamlab marks --group S3
    python -m tamlab theorem --group S4 --k-max 10
    python -m tamlab levels --group C2 --functor fixed:n=5
"""

import sys

from tamlab.interfaces.cli import main

if __name__ == "__main__":
    sys.exit(main())
