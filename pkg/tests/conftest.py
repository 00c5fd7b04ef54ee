import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from qlab.corpus import corpus_quantales  # noqa: E402
from qlab.vmat import VRelation  # noqa: E402

settings.register_profile("qlab", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qlab")

QUANTALES = corpus_quantales()


@st.composite
def relations(draw, q=None, src=None, dst=None):
    q = q if q is not None else draw(st.sampled_from(QUANTALES))
    src = src if src is not None else draw(st.integers(1, 3))
    dst = dst if dst is not None else draw(st.integers(1, 3))
    rows = [[draw(st.integers(0, q.n - 1)) for _ in range(dst)] for _ in range(src)]
    return VRelation.of(q, rows, dst)


@st.composite
def composable_triples(draw):
    q = draw(st.sampled_from(QUANTALES))
    a, b, c, d = (draw(st.integers(1, 3)) for _ in range(4))
    return (draw(relations(q, a, b)), draw(relations(q, b, c)), draw(relations(q, c, d)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
