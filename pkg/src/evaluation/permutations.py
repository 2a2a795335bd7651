import itertools
import math
from typing import List, Set, Tuple

from src.errors import DegenerateDocumentError, ValidationError
from src.evaluation.prng import Xoshiro256StarStar


def generate_permutations(m: int, count: int, seed: int) -> List[List[int]]:
    """count distinct non-identity permutations of 0..m-1.

    Drawn with Fisher-Yates from xoshiro256** seeded by ``seed``; duplicates and the
    identity are redrawn. When at most ``count`` non-identity permutations exist, all
    of them are returned in lexicographic order instead.
    """
    if m < 2:
        raise DegenerateDocumentError(f"cannot permute a document of {m} sentence(s)")
    if count < 1:
        raise ValidationError("count", "at least one permutation must be requested")

    identity = tuple(range(m))
    if math.factorial(m) - 1 <= count:
        return [list(p) for p in itertools.permutations(identity) if p != identity]

    rng = Xoshiro256StarStar(seed)
    seen: Set[Tuple[int, ...]] = set()
    perms = []
    while len(perms) < count:
        order = list(identity)
        rng.shuffle(order)
        key = tuple(order)
        if key == identity or key in seen:
            continue
        seen.add(key)
        perms.append(order)

    return perms


def insertion_order(m: int, removed: int, position: int) -> List[int]:
    """Sentence order after moving sentence ``removed`` to ``position``."""
    rest = [k for k in range(m) if k != removed]
    return rest[:position] + [removed] + rest[position:]
