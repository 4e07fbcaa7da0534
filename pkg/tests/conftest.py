from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def distinct_rationals(n, avoid=()):
    return st.lists(rationals, min_size=n, max_size=n, unique=True).filter(
        lambda vs: not set(vs) & set(avoid))


@st.composite
def generic_sets(draw, sizes, L):
    """Rapidity blocks of the given sizes plus L distinct inhomogeneities,
    with every rapidity off y and y - 1 and all rapidities distinct."""
    y = draw(distinct_rationals(L))
    bad = set(y) | {v - 1 for v in y}
    total = sum(sizes)
    raps = draw(st.lists(rationals.filter(lambda v: v not in bad), min_size=total,
                         max_size=total, unique=True))
    out, k = [], 0
    for s in sizes:
        out.append(raps[k:k + s])
        k += s
    return (*out, y)
