"""
Content-addressed certificate directory
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Any, List, Union

from ..exceptions import ParseError
from .serialize import CertificateFile, dump, from_json

logger = logging.getLogger(__name__)


class CertificateStore:
    """Certificates saved as ``<id>.json`` where id is a prefix of their sha256"""

    def __init__(self, directory: Union[str, Path]) -> None:
        self.directory = Path(directory)

    def path_for(self, certificate_id: str) -> Path:
        return self.directory / f"{certificate_id}.json"

    def save(self, obj: Any) -> str:
        """Store a certificate file, fact, emptiness certificate or verdict"""
        cert = obj if isinstance(obj, CertificateFile) else dump(obj)
        certificate_id = cert.certificate_id
        target = self.path_for(certificate_id)
        if target.exists():
            return certificate_id

        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(cert.to_json())
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        logger.debug(f"Saved {cert.kind} certificate {certificate_id}")
        return certificate_id

    def load(self, certificate_id: str) -> CertificateFile:
        path = self.path_for(certificate_id)
        if not path.exists():
            raise ParseError(f"No certificate '{certificate_id}' in {self.directory}")
        return from_json(path.read_text(encoding="utf-8"))

    def ids(self) -> List[str]:
        if not self.directory.is_dir():
            return []
        return sorted(path.stem for path in self.directory.glob("*.json"))

    def __len__(self) -> int:
        return len(self.ids())

    def __contains__(self, certificate_id: object) -> bool:
        if not isinstance(certificate_id, str):
            return False
        return self.path_for(certificate_id).exists()
