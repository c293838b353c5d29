"""Weyl group elements, Bruhat order and reduced-word combinatorics.

Elements are identified by their image of rho; since rho is regular dominant this
image determines the element, and greedy descent recovers a reduced word.
"""

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from kmlab.errors import EmptyWithinBound
from kmlab.rootdata.gcm import GCM, Weight

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, canonicalized by ``rho_image = w(rho)``."""

    rho_image: Weight
    reduced_word: Word = field(compare=False)
    gcm: GCM = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    @property
    def is_identity(self) -> bool:
        return not self.reduced_word

    def is_left_descent(self, i: int) -> bool:
        """True when l(s_i w) < l(w)."""
        return self.gcm.pairing(i, self.rho_image) < 0

    def is_right_descent(self, i: int) -> bool:
        """True when l(w s_i) < l(w), i.e. w(alpha_i) is a negative root."""
        image = self.act(self.gcm.simple_root(i))
        return image.total_depth > 0

    def left_descents(self) -> List[int]:
        return [i for i in self.gcm.indices if self.is_left_descent(i)]

    def right_descents(self) -> List[int]:
        return [i for i in self.gcm.indices if self.is_right_descent(i)]

    def left_multiply(self, i: int) -> "WeylElement":
        return _from_rho_image(self.gcm, self.gcm.reflect(i, self.rho_image))

    def right_multiply(self, i: int) -> "WeylElement":
        return canonicalize(self.gcm, self.reduced_word + (i,))

    def inverse(self) -> "WeylElement":
        return canonicalize(self.gcm, tuple(reversed(self.reduced_word)))

    def act(self, weight: Weight) -> Weight:
        """Apply w to a weight (rightmost reflection first)."""
        return apply_word(self.gcm, self.reduced_word, weight)

    def label(self) -> str:
        """Reduced word as labels joined by dots; "e" for the identity."""
        return format_word(self.gcm, self.reduced_word)

    def __str__(self) -> str:
        return self.label()


def apply_word(gcm: GCM, word: Sequence[int], weight: Weight) -> Weight:
    for i in reversed(word):
        weight = gcm.reflect(i, weight)
    return weight


def _greedy_descent(gcm: GCM, image: Weight) -> Word:
    word = []
    current = image
    while True:
        for i in gcm.indices:
            if gcm.pairing(i, current) < 0:
                word.append(i)
                current = gcm.reflect(i, current)
                break
        else:
            return tuple(word)


def _from_rho_image(gcm: GCM, image: Weight) -> WeylElement:
    return WeylElement(image, _greedy_descent(gcm, image), gcm)


def canonicalize(gcm: GCM, word: Sequence[int]) -> WeylElement:
    """Canonical element for an arbitrary word in the simple reflections.

    Args:
        gcm: Root datum
        word: Internal indices, leftmost letter acting last

    Returns:
        WeylElement whose reduced word uses the smallest-index descent at each step
    """
    for i in word:
        if not 0 <= i < gcm.rank:
            raise ValueError(f"Index {i} out of range for rank {gcm.rank}")
    return _from_rho_image(gcm, apply_word(gcm, word, gcm.rho))


def identity(gcm: GCM) -> WeylElement:
    return WeylElement(gcm.rho, (), gcm)


def reduced_words(w: WeylElement) -> List[Word]:
    """Every reduced word of ``w``, in lexicographic order."""
    if w.is_identity:
        return [()]
    words = []
    for i in w.left_descents():
        words.extend((i,) + rest for rest in reduced_words(w.left_multiply(i)))
    return sorted(words)


def parse_word(gcm: GCM, text: str) -> Word:
    """Parse "1.2.1", "1,2,1" or "e" into internal indices."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    return tuple(gcm.index(tok) for tok in re.split(r"[.,\s]+", text) if tok)


def format_word(gcm: GCM, word: Sequence[int]) -> str:
    if not word:
        return "e"
    return ".".join(gcm.labels[i] for i in word)


@lru_cache(maxsize=8192)
def _bruhat(gcm: GCM, v: Weight, w: Weight) -> bool:
    v_el = _from_rho_image(gcm, v)
    w_el = _from_rho_image(gcm, w)
    if v_el.length > w_el.length:
        return False
    if w_el.is_identity:
        return v_el.is_identity
    i = w_el.left_descents()[0]
    sw = gcm.reflect(i, w)
    if gcm.pairing(i, v) < 0:
        return _bruhat(gcm, gcm.reflect(i, v), sw)
    return _bruhat(gcm, v, sw)


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """Bruhat comparison v <= w by the descent recursion.

    With s_i a left descent of w: if s_i is also a left descent of v the question
    reduces to s_i v <= s_i w, otherwise to v <= s_i w.
    """
    return _bruhat(w.gcm, v.rho_image, w.rho_image)


def bruhat_leq_oracle(v: WeylElement, w: WeylElement) -> bool:
    """Subword test: v <= w iff some subword of a reduced word of w gives v."""
    word = w.reduced_word
    for k in range(v.length, len(word) + 1):
        for positions in combinations(range(len(word)), k):
            if canonicalize(w.gcm, [word[p] for p in positions]) == v:
                return True
    return False


def enumerate_elements(gcm: GCM, max_len: int) -> List[WeylElement]:
    """All elements of length <= max_len, ordered by length then reduced word."""
    layer = [identity(gcm)]
    seen = {layer[0]}
    result = list(layer)
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for i in gcm.indices:
                if gcm.pairing(i, w.rho_image) > 0:
                    u = w.left_multiply(i)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
        if not nxt:
            break
        result.extend(sorted(nxt, key=lambda u: u.reduced_word))
        layer = nxt
    logger.debug("enumerated %d Weyl elements up to length %d", len(result), max_len)
    return result


def minimal_upper_bounds(elements: Iterable[WeylElement], search_len: int) -> List[WeylElement]:
    """Bruhat-minimal common upper bounds of ``elements`` among lengths <= search_len.

    Raises:
        EmptyWithinBound: If no common upper bound has length <= search_len
        ValueError: If ``elements`` is empty
    """
    targets = list(elements)
    if not targets:
        raise ValueError("minimal_upper_bounds needs a nonempty set")
    gcm = targets[0].gcm
    uppers = [
        v for v in enumerate_elements(gcm, search_len) if all(bruhat_leq(w, v) for w in targets)
    ]
    if not uppers:
        raise EmptyWithinBound(search_len)
    return [u for u in uppers if not any(o != u and bruhat_leq(o, u) for o in uppers)]


def min_coset_rep(w: WeylElement, weight: Weight) -> WeylElement:
    """Minimal-length element of w W_J.

    J indexes the simple coroots vanishing on ``weight``.
    """
    gcm = w.gcm
    stabilizer = [i for i in gcm.indices if gcm.pairing(i, weight) == 0]
    current = w
    changed = True
    while changed:
        changed = False
        for i in stabilizer:
            if current.is_right_descent(i):
                current = current.right_multiply(i)
                changed = True
                break
    return current


def interval(v: WeylElement, w: WeylElement) -> List[WeylElement]:
    """Bruhat interval [v, w]."""
    if not bruhat_leq(v, w):
        return []
    return [
        u
        for u in enumerate_elements(w.gcm, w.length)
        if u.length >= v.length and bruhat_leq(v, u) and bruhat_leq(u, w)
    ]


def longest_element(gcm: GCM, max_len: int = 128) -> Optional[WeylElement]:
    """w0 when W is finite and has length <= max_len, else None.

    Any chain of length-increasing left multiplications ends at w0 in a finite group.
    """
    w = identity(gcm)
    for _ in range(max_len + 1):
        ascent = next((i for i in gcm.indices if gcm.pairing(i, w.rho_image) > 0), None)
        if ascent is None:
            return w
        w = w.left_multiply(ascent)
    return None
