"""Writes tests/fixtures/ks_oracle.json: two-sample KS statistics and
asymptotic p-values computed with scipy for seeded random samples."""
import json
import math
import pathlib

import numpy as np
from scipy import stats

ROOT = pathlib.Path(__file__).resolve().parents[2]


def main():
    rng = np.random.default_rng(12345)
    cases = []
    for k in range(100):
        n = int(rng.integers(3, 80))
        m = int(rng.integers(3, 80))
        shift = float(rng.choice([0.0, 0.0, 5.0, 20.0]))
        a = rng.integers(1, 120, size=n).astype(float)
        b = (rng.integers(1, 120, size=m) + shift).astype(float)
        d = stats.ks_2samp(a, b, method="asymp").statistic
        p = stats.kstwobign.sf(math.sqrt(n * m / (n + m)) * d)
        cases.append({"a": a.tolist(), "b": b.tolist(), "d": float(d), "p": float(p)})
    lambdas = [0.2, 0.5, 0.8, 1.0, 1.2245, 1.358, 1.628, 2.0, 3.0]
    q = [{"lambda": x, "q": float(stats.kstwobign.sf(x))} for x in lambdas]
    out = {"pairs": cases, "kolmogorov_q": q}
    (ROOT / "tests" / "fixtures" / "ks_oracle.json").write_text(json.dumps(out) + "\n")


if __name__ == "__main__":
    main()
