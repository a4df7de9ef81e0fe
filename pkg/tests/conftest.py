import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cgafactor.algebra import DIM, EVEN_INDICES, Multivector

coeff = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False, width=64)
multivectors = arrays(np.float64, DIM, elements=coeff).map(Multivector)


@st.composite
def even_multivectors(draw):
    c = np.zeros(DIM)
    c[EVEN_INDICES] = draw(arrays(np.float64, len(EVEN_INDICES), elements=coeff))
    return Multivector(c)


seeds = st.integers(0, 2**32 - 1)

# --- independent oracle for the blade product --------------------------------------

_ORDER = "123pm"
_SQUARE = {"1": 1, "2": 1, "3": 1, "p": 1, "m": -1}


def naive_blade_product(a: str, b: str) -> tuple[str, int]:
    """Product of blades given as index strings, by bubble-sorting the concatenation."""
    word = list(a + b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if _ORDER.index(word[i]) > _ORDER.index(word[i + 1]):
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
    out = []
    for ch in word:
        if out and out[-1] == ch:
            out.pop()
            sign *= _SQUARE[ch]
        else:
            out.append(ch)
    return "".join(out), sign


def naive_product(x: Multivector, y: Multivector) -> dict[str, float]:
    out: dict[str, float] = {}
    for ka, va in x.to_dict().items():
        for kb, vb in y.to_dict().items():
            a = "" if ka == "s" else ka[1:]
            b = "" if kb == "s" else kb[1:]
            blade, sign = naive_blade_product(a, b)
            name = "e" + blade if blade else "s"
            out[name] = out.get(name, 0.0) + sign * va * vb
    return out
