"""
Certificate files: serialization, storage and an independent checker
"""

from .checker import CheckResult, check_certificate, check_path, check_text
from .serialize import CertificateFile, StepRecord, dump, from_json
from .store import CertificateStore

__all__ = [
    "CertificateFile",
    "CertificateStore",
    "CheckResult",
    "StepRecord",
    "check_certificate",
    "check_path",
    "check_text",
    "dump",
    "from_json",
]
