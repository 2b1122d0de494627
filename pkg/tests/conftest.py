import pytest

from qbsc import BuilderVariant, build_gqbsc, encode_operands


@pytest.fixture(scope="session")
def comparator_body():
    """Value-independent comparator body (zero operands) at a given width."""
    cache = {}

    def build(n: int, variant: BuilderVariant = BuilderVariant.FIGURE):
        key = (n, variant)
        if key not in cache:
            cache[key] = build_gqbsc(encode_operands("0" * n, "0" * n), variant)
        return cache[key]

    return build
