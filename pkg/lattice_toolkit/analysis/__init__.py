from lattice_toolkit.analysis.verification_suite import VerificationSuite

__all__ = ["VerificationSuite"]
