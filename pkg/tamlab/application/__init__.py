"""Application Layer: Use cases and service orchestration.

This layer contains:
- services/: verification.py (marks, norms, Lemma, main theorem) and
  tambara_service.py (instances, axioms, unit levels)
"""

from tamlab.application.services import (
    VerificationService,
    TambaraService,
    LevelsReport,
)

__all__ = [
    "VerificationService",
    "TambaraService",
    "LevelsReport",
]
