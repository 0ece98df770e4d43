import numpy as np
from hypothesis import strategies as st

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def mode_arrays(draw, min_size=1, max_size=10):
    n = draw(st.integers(min_size, max_size))
    re = draw(st.lists(finite, min_size=n, max_size=n))
    im = draw(st.lists(finite, min_size=n, max_size=n))
    return np.array(re) + 1j * np.array(im)


def random_modes(N, seed=0, norm=1.0):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=N) + 1j * rng.normal(size=N)
    return norm * z / np.linalg.norm(z)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
