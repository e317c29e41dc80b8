"""Literal word-rewriting collector for the 2-group family.

This is the anti-drift oracle for the closed-form multiplication in
ccakit.higman.  A word is a list of symbols ('g', i) or ('h', j) with
0-based indices.  Collection applies the defining relations one local
rewrite at a time, with no shortcuts:

  - h generators commute with everything: move each 'h' past a following
    'g' one swap at a time;
  - g_j g_i with j > i becomes g_i g_j followed by the commutator h-word
    c(i, j);
  - g_i g_i becomes the square h-word b-row(i);
  - h_j h_j cancels.

The loop runs until the word is in normal form: g's strictly increasing,
then h's as a parity vector.
"""

from __future__ import annotations

from ccakit.higman import Element, HigmanParams


def element_to_word(params: HigmanParams, x: Element) -> list[tuple[str, int]]:
    e, f = x
    word = [("g", i) for i in range(params.r) if (e >> i) & 1]
    word += [("h", j) for j in range(params.s) if (f >> j) & 1]
    return word


def _c_word(params: HigmanParams, i: int, j: int) -> list[tuple[str, int]]:
    bits = params.c[params.pair_index(i, j)]
    return [("h", k) for k in range(params.s) if (bits >> k) & 1]


def _b_word(params: HigmanParams, i: int) -> list[tuple[str, int]]:
    bits = params.b[i]
    return [("h", k) for k in range(params.s) if (bits >> k) & 1]


def collect_word(params: HigmanParams,
                 word: list[tuple[str, int]]) -> Element:
    """Rewrite the word to normal form and return its (e, f) element."""
    word = list(word)
    changed = True
    while changed:
        changed = False
        for pos in range(len(word) - 1):
            (ka, ia), (kb, ib) = word[pos], word[pos + 1]
            if ka == "h" and kb == "g":
                # [g, h] = 1
                word[pos], word[pos + 1] = word[pos + 1], word[pos]
                changed = True
                break
            if ka == "g" and kb == "g":
                if ia == ib:
                    # g_i^2 = b-row h-word
                    word[pos:pos + 2] = _b_word(params, ia)
                    changed = True
                    break
                if ia > ib:
                    # g_j g_i = g_i g_j c(i, j)  for i < j
                    word[pos:pos + 2] = ([("g", ib), ("g", ia)]
                                         + _c_word(params, ib, ia))
                    changed = True
                    break
            if ka == "h" and kb == "h" and ia == ib:
                del word[pos:pos + 2]
                changed = True
                break
    e = 0
    f = 0
    for kind, i in word:
        if kind == "g":
            e |= 1 << i
        else:
            f ^= 1 << i
    return (e, f)


def multiply_oracle(params: HigmanParams, a: Element, b: Element) -> Element:
    return collect_word(
        params, element_to_word(params, a) + element_to_word(params, b))
