import pytest
from hypothesis import settings, strategies as st

from wad import Alphabet, Str

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def enc(*texts, alphabet=None):
    """Encode texts over one alphabet inferred from all of them."""
    alphabet = alphabet or Alphabet.from_text(*texts, "a")
    out = tuple(alphabet.encode(t) for t in texts)
    return out if len(out) > 1 else out[0]


@st.composite
def str_pairs(draw, max_len=12, max_size=3):
    k = draw(st.integers(1, max_size))
    alph = Alphabet.letters(k)
    sym = st.integers(0, k - 1)
    s = draw(st.lists(sym, max_size=max_len))
    t = draw(st.lists(sym, max_size=max_len))
    return Str(tuple(s), alph), Str(tuple(t), alph)


@st.composite
def str_triples(draw, max_len=8, max_size=3):
    k = draw(st.integers(1, max_size))
    alph = Alphabet.letters(k)
    sym = st.integers(0, k - 1)
    return tuple(Str(tuple(draw(st.lists(sym, max_size=max_len))), alph) for _ in range(3))


@pytest.fixture
def ab():
    return Alphabet.from_text("ab")
