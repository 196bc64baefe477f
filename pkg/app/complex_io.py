"""
Reading and writing chain complex files

Two JSON shapes are accepted:
    {"ranks": [r0, ..., rn], "boundaries": [B1, ..., Bn]}
    {"vertices": v, "maximal": [[...], ...]}
"""
import json
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from app.chain_topology import ChainComplex, SimplicialComplex, from_simplicial
from app.error_handlers import ComplexFormatError, HeisvcError

logger = logging.getLogger(__name__)


class ComplexFileHandler:
    """Load and save complexes as JSON files"""

    def __init__(self, allowed_extensions: set = frozenset({'json'})):
        """
        Initialize file handler

        Args:
            allowed_extensions: Set of allowed file extensions
        """
        self.allowed_extensions = set(allowed_extensions)

    def allowed_file(self, filename: str) -> bool:
        return '.' in filename and \
               filename.rsplit('.', 1)[1].lower() in self.allowed_extensions

    def parse(self, data) -> Tuple[bool, str, Optional[ChainComplex]]:
        """
        Build a chain complex from decoded JSON

        Args:
            data: Decoded JSON object

        Returns:
            Tuple of (success, message, complex)
        """
        if not isinstance(data, dict):
            return False, "Complex file must hold a JSON object", None

        try:
            if 'ranks' in data:
                return True, "Chain complex parsed", ChainComplex.from_dict(data)
            if 'vertices' in data and 'maximal' in data:
                simplicial = SimplicialComplex.from_dict(data)
                return True, "Simplicial complex parsed", from_simplicial(simplicial)
        except (HeisvcError, ValueError, TypeError, KeyError) as e:
            logger.warning(f"Invalid complex: {e}")
            return False, f"Invalid complex: {e}", None

        return False, "Expected keys 'ranks'/'boundaries' or 'vertices'/'maximal'", None

    def load(self, filepath: Union[str, Path]) -> Tuple[bool, str, Optional[ChainComplex]]:
        """
        Read a complex file

        Args:
            filepath: Path to a JSON complex file

        Returns:
            Tuple of (success, message, complex)
        """
        filepath = Path(filepath)
        if not self.allowed_file(filepath.name):
            return False, f"File type not allowed. Allowed types: {', '.join(sorted(self.allowed_extensions))}", None

        try:
            with open(filepath, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except OSError as e:
            logger.error(f"Error reading complex file: {e}")
            return False, f"Error reading complex file: {e}", None
        except json.JSONDecodeError as e:
            logger.error(f"Malformed JSON in {filepath}: {e}")
            return False, f"Malformed JSON: {e}", None

        success, message, complex_ = self.parse(data)
        if success:
            logger.info(f"Loaded complex {complex_.ranks} from {filepath}")
        return success, message, complex_

    def load_or_raise(self, filepath: Union[str, Path]) -> ChainComplex:
        success, message, complex_ = self.load(filepath)
        if not success:
            raise ComplexFormatError(message)
        return complex_

    def save(self, complex_: Union[ChainComplex, SimplicialComplex],
             filepath: Union[str, Path]) -> Tuple[bool, str, Optional[Path]]:
        """
        Write a complex as JSON

        Args:
            complex_: Chain or simplicial complex
            filepath: Destination path

        Returns:
            Tuple of (success, message, filepath)
        """
        filepath = Path(filepath)
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(complex_.to_dict(), f, indent=2)
            logger.info(f"Complex saved: {filepath}")
            return True, "Complex saved successfully", filepath
        except OSError as e:
            logger.error(f"Error saving complex: {e}")
            return False, f"Error saving complex: {e}", None
