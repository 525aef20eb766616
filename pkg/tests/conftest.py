import random

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

LETTERS = "aAbBdD"


def random_words(seed: int, count: int, max_len: int, letters: str = LETTERS) -> list[str]:
    rng = random.Random(seed)
    return ["".join(rng.choice(letters) for _ in range(rng.randint(0, max_len))) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus_words():
    """Short torus words used for the structural checks on built diagrams."""
    fixed = ["", "a", "b", "A", "B", "ab", "aB", "d", "(aba)^2 B a", "(aba)^2 b^-1", "(aba)^2 b^-2",
             "abab", "AbA", "aab", "(aba)^2 b^2"]
    return fixed + random_words(7, 25, 4, "aAbB")


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_corpus():
    """500 random torus words through both pipelines."""
    from ehtorus import eh, mcg

    rows = []
    for w in random_words(2024, 500, 6):
        tight = mcg.tight(w).verdict is mcg.Verdict.TIGHT
        try:
            kind, mismatch = eh.decide("torus", w).kind, False
        except eh.VerdictMismatch as e:
            kind, mismatch = e.certificate.kind, True
        rows.append({"word": w, "tight": tight, "kind": kind, "mismatch": mismatch})
    return rows
