import numpy as np
import pytest

from plap.graph import SignedGraph

# Eigenpairs of Delta_4 on the signed 4-cycle, 4 significant figures.
REF_LAMBDA = [16.86, 16.68, 16.31, 14.63, 14.48, 13.69, 13.44, 11.62, 1.608, 1.364, 1.301, 0.7047]
REF_F = np.array([
    [5.568e-1, 4.556e-1, -6.894e-1, 8.567e-1],
    [6.186e-1, -4.107e-1, -5.780e-1, 8.678e-1],
    [5.952e-1, -1.066e-2, -6.164e-1, 8.818e-1],
    [6.693e-1, -6.355e-1, 4.493e-1, 7.927e-1],
    [6.796e-1, -5.469e-1, 1.644e-1, 8.337e-1],
    [-3.717e-1, 7.471e-1, -8.258e-1, 6.560e-1],
    [-1.032e-1, 6.907e-1, -8.416e-1, 7.211e-1],
    [5.070e-1, -8.595e-1, 7.533e-1, 5.107e-2],
    [-5.715e-1, 1.737e-1, 9.169e-1, 5.296e-1],
    [2.339e-1, 8.174e-1, 8.588e-1, 2.459e-1],
    [2.953e-3, 5.181e-1, 9.742e-1, 4.060e-1],
    [8.298e-1, 3.946e-1, -6.080e-3, -4.067e-1],
])

SIGNED_C4_TEXT = """\
pgraph 1            # magic + version
n 4
v 1 2.0 1.0         # v <label> <mu> <kappa>
v 2 1.0 1.0
v 3 1.0 1.0
v 4 1.0 2.0
e 1 2 1.0 +1        # e <i> <j> <w> <sigma in {+1,-1}>
e 2 3 1.0 +1
e 3 4 1.0 +1
e 1 4 2.0 -1
"""


def make_signed_c4():
    return SignedGraph.from_edges(
        4, [(1, 2, 1.0, 1), (2, 3, 1.0, 1), (3, 4, 1.0, 1), (1, 4, 2.0, -1)],
        mu=[2.0, 1.0, 1.0, 1.0], kappa=[1.0, 1.0, 1.0, 2.0],
    )


@pytest.fixture
def signed_c4():
    return make_signed_c4()


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.pg"
    path.write_text(SIGNED_C4_TEXT)
    return path


def random_connected(seed, n_range=(4, 20), signless=True, unit=True):
    """Random tree plus random extra edges; optionally random weights/measures."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(*n_range))
    pairs = {(int(rng.integers(0, k)), k) for k in range(1, n)}
    extra = int(rng.integers(0, n * (n - 1) // 2 - (n - 1) + 1))
    for _ in range(extra):
        a, b = sorted(rng.choice(n, 2, replace=False).tolist())
        pairs.add((a, b))
    pairs = sorted(pairs)
    m = len(pairs)
    w = np.ones(m) if unit else rng.uniform(0.2, 3.0, m)
    sigma = -np.ones(m) if signless else rng.choice([-1.0, 1.0], m)
    mu = None if unit else rng.uniform(0.5, 2.0, n)
    kappa = None if unit else rng.uniform(-1.0, 2.0, n)
    i, j = np.array(pairs).T
    return SignedGraph.from_arrays(n, i, j, w, sigma, mu=mu, kappa=kappa, one_based=False)


def random_signed(seed, n_max=6):
    """Random (not necessarily connected) signed graph with random data."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < 0.6
    if not keep.any():
        keep[0] = True
    m = int(keep.sum())
    return SignedGraph.from_arrays(
        n, iu[keep], ju[keep], rng.uniform(0.2, 3.0, m), rng.choice([-1.0, 1.0], m),
        mu=rng.uniform(0.5, 2.0, n), kappa=rng.uniform(-1.0, 2.0, n), one_based=False,
    )


def dense_signless_matrix(g):
    """mu^(-1/2) (D + A) mu^(-1/2) with D_ii = kappa_i + sum_j w_ij: symmetric, PSD."""
    Q = np.diag(g.kappa.astype(float))
    for a, b, w in zip(g.src, g.dst, g.w):
        Q[a, a] += w
        Q[b, b] += w
        Q[a, b] += w
        Q[b, a] += w
    s = 1.0 / np.sqrt(g.mu)
    return s[:, None] * Q * s[None, :]


def matrix_power_oracle(M, tol=1e-15, max_iter=2_000_000):
    """Plain power iteration on a symmetric PSD matrix; Rayleigh-quotient estimate."""
    v = np.linspace(1.0, 2.0, M.shape[0])
    v /= np.linalg.norm(v)
    theta = 0.0
    for _ in range(max_iter):
        u = M @ v
        new = float(v @ u)
        v = u / np.linalg.norm(u)
        if abs(new - theta) <= tol * abs(new):
            return new
        theta = new
    raise RuntimeError("oracle did not converge")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
