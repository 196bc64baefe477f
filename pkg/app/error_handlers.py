"""
Error types, CLI error handling and input validation utilities
"""
import functools
import logging
from typing import List, Optional, Tuple

import click

logger = logging.getLogger(__name__)

# Process exit codes used by every command
EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


class HeisvcError(Exception):
    """Base class for all library errors"""
    pass


class IntegerOverflowError(HeisvcError, OverflowError):
    """A result left the signed 64-bit range"""
    pass


class IdentityInputError(HeisvcError, ValueError):
    """Operation is undefined on the identity element"""
    pass


class NotPrimitiveError(HeisvcError, ValueError):
    """Generator is a proper power"""
    pass


class NotConjugateError(HeisvcError, ValueError):
    """No conjugator exists between the two generators"""
    pass


class CentralInputError(HeisvcError, ValueError):
    """Operation needs a non-central generator"""
    pass


class SplittingError(HeisvcError, AssertionError):
    """Primitive generator failed to be a direct factor of its normalizer"""
    pass


class SubgroupSpecError(HeisvcError, ValueError):
    """Malformed subgroup specification"""
    pass


class CensusError(HeisvcError, ValueError):
    """Census requested for a subgroup that is not non-central cyclic"""
    pass


class InvalidChainMapError(HeisvcError, ValueError):
    """Chain map does not commute with the boundaries or has wrong shapes"""
    pass


class InvalidComplexError(HeisvcError, ValueError):
    """Boundary shapes are inconsistent or the boundary does not square to zero"""
    pass


class MalformedSimplexError(HeisvcError, ValueError):
    """Simplex is empty, unsorted or refers to a missing vertex"""
    pass


class ComplexFormatError(HeisvcError):
    """Complex file could not be read or parsed"""
    pass


class ValidationError(HeisvcError):
    """Custom validation error"""
    pass


# Domain errors caused by what the user typed rather than by a bug
USAGE_ERRORS = (
    ValidationError,
    IntegerOverflowError,
    IdentityInputError,
    NotPrimitiveError,
    CentralInputError,
    SubgroupSpecError,
    CensusError,
)


def cli_errors(func):
    """
    Map library exceptions raised inside a CLI command to exit codes

    Usage errors become click.UsageError (exit 2), unreadable or malformed
    complex files exit with 3, anything else propagates.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except USAGE_ERRORS as e:
            logger.warning(f"Usage error: {e}")
            raise click.UsageError(str(e))
        except (ComplexFormatError, OSError) as e:
            logger.error(f"I/O error: {e}")
            click.echo(f"Error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_IO)
    return wrapper


def validate_bound(bound, max_bound, min_bound=1):
    """
    Validate a ball bound

    Args:
        bound: Requested bound
        max_bound: Largest allowed value
        min_bound: Smallest allowed value

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(bound, int) or isinstance(bound, bool):
        return False, "Bound must be an integer"

    if bound < min_bound:
        return False, f"Bound must be >= {min_bound}"

    if bound > max_bound:
        return False, f"Bound cannot exceed {max_bound}"

    return True, None


def validate_triple(tokens) -> Tuple[bool, Optional[str], Optional[Tuple[int, int, int]]]:
    """
    Validate a group element written as three integers

    Args:
        tokens: Sequence of string tokens

    Returns:
        Tuple of (is_valid, error_message, triple)
    """
    if len(tokens) != 3:
        return False, f"Expected 3 integers, got {len(tokens)}: {' '.join(tokens)!r}", None

    try:
        triple = tuple(int(t) for t in tokens)
    except ValueError:
        return False, f"Not an integer triple: {' '.join(tokens)!r}", None

    return True, None, triple


def parse_generators(args) -> Tuple[bool, Optional[str], List[Tuple[int, int, int]]]:
    """
    Parse subgroup generators from CLI arguments

    Triples may be separated by ';' inside one argument ("1 0 0 ; 0 1 0")
    or given as separate arguments.

    Args:
        args: Sequence of CLI argument strings

    Returns:
        Tuple of (is_valid, error_message, triples)
    """
    text = ' ; '.join(args)
    chunks = [chunk.split() for chunk in text.replace(',', ' ').split(';')]
    chunks = [chunk for chunk in chunks if chunk]

    if not chunks:
        return False, "At least one generator is required", []

    triples = []
    for chunk in chunks:
        is_valid, message, triple = validate_triple(chunk)
        if not is_valid:
            return False, message, []
        triples.append(triple)

    return True, None, triples
