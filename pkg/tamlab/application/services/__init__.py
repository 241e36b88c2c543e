"""Application services: verification and Tambara checks."""

from tamlab.application.services.verification import VerificationService
from tamlab.application.services.tambara_service import LevelsReport, TambaraService

__all__ = [
    "VerificationService",
    "TambaraService",
    "LevelsReport",
]
