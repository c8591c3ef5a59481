"""Tensor-word bookkeeping for the N-state chain.

Single-site states are numbered 0..N-1 in matrix order and displayed with
the mirror convention: states above the middle print as the mirrored digit
with a ``b`` suffix (so for N=3 the letters read 1, 2, 1b).  Words list the
leftmost tensor factor first, and the index of a word is its big-endian
digit value, matching the tensor-product layout used everywhere else.
"""

from __future__ import annotations

from itertools import product

__all__ = [
    "all_words", "word_index", "index_word", "letter_str", "word_str",
    "middle_count", "words_by_middle_count", "cyclic_shift_images",
    "necklace_count",
]


def all_words(n: int, r: int) -> list[tuple[int, ...]]:
    return list(product(range(n), repeat=r))


def word_index(word: tuple[int, ...], n: int) -> int:
    idx = 0
    for letter in word:
        idx = idx * n + letter
    return idx


def index_word(idx: int, n: int, r: int) -> tuple[int, ...]:
    out = []
    for _ in range(r):
        out.append(idx % n)
        idx //= n
    return tuple(reversed(out))


def letter_str(letter: int, n: int) -> str:
    p = (n + 1) // 2
    value = letter + 1
    if value <= p:
        return str(value)
    return f"{n + 1 - value}b"


def word_str(word: tuple[int, ...], n: int) -> str:
    return "".join(letter_str(x, n) for x in word)


def middle_count(word: tuple[int, ...], n: int) -> int:
    mid = (n - 1) // 2
    return sum(1 for x in word if x == mid)


def words_by_middle_count(n: int, r: int) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(r + 1)}
    for w in all_words(n, r):
        out[middle_count(w, n)].append(w)
    return out


def cyclic_shift_images(n: int, r: int) -> list[int]:
    """images[idx] = index of the left-rotated word (w1..wr -> w2..wr w1)."""
    images = []
    for idx in range(n**r):
        w = index_word(idx, n, r)
        images.append(word_index(w[1:] + w[:1], n))
    return images


def necklace_count(n: int, r: int) -> int:
    """Number of length-r necklaces over n letters (orbit count of rotation)."""
    from math import gcd

    total = 0
    for d in range(1, r + 1):
        if r % d == 0:
            phi = sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)
            total += phi * n ** (r // d)
    return total // r
