#!/usr/bin/env python3
"""Reference statistics for the fixture CSVs, from independent libraries.

ADF and KPSS come from statsmodels, Phillips-Perron from arch, Levene,
Bartlett and Kruskal-Wallis from scipy, ARCH LM from statsmodels. Only the
choices the C++ code documents are mirrored here (lag rules, segment split,
moving-average detrending); the statistics themselves are the libraries'.

Run from the repository root:

    python3 tests/oracle/reference_stats.py > /tmp/reference.txt

The printed constants are pasted into tests/acceptance/acceptance.cpp.
Tested with statsmodels 0.14.6, scipy 1.15.3, arch 8.0.0.
"""

import math
import pathlib
import warnings

import numpy as np
import pandas as pd
import scipy
import statsmodels
from arch import __version__ as arch_version
from arch.unitroot import PhillipsPerron
from scipy import stats
from statsmodels.stats.diagnostic import het_arch
from statsmodels.tools.sm_exceptions import InterpolationWarning
from statsmodels.tsa.stattools import adfuller, kpss

warnings.simplefilter("ignore", InterpolationWarning)

COLUMNS = ["adf_c", "adf_ct", "kpss_c", "kpss_ct", "pp_c", "pp_ct", "levene", "bartlett", "arch_lm",
           "kruskal_wallis"]
FIXTURES = ["white_noise", "random_walk", "trend_ar1", "weekly_sine", "arch_break"]
DATA = pathlib.Path(__file__).resolve().parents[1] / "data" / "fixtures"


def schwert(n):
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def pp_lags(n):
    return int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))


def centered_ma(x, period):
    if period % 2:
        w = np.ones(period) / period
    else:
        w = np.r_[0.5, np.ones(period - 1), 0.5] / period
    half = period // 2
    return np.convolve(x, w, mode="valid"), half


def kruskal_weekly(x, period=7):
    ma, half = centered_ma(x, period)
    e = x[half : len(x) - half] - ma
    phase = np.arange(half, len(x) - half) % period
    return stats.kruskal(*[e[phase == k] for k in range(period)]).statistic


def reference(x):
    n = len(x)
    out = {}
    for reg, name in (("c", "c"), ("ct", "ct")):
        out[f"adf_{name}"] = adfuller(x, maxlag=schwert(n), regression=reg, autolag="AIC")[0]
        out[f"kpss_{name}"] = kpss(x, regression=reg, nlags=schwert(n))[0]
        out[f"pp_{name}"] = PhillipsPerron(x, lags=pp_lags(n), trend=reg, test_type="tau").stat
    first, second = x[: (n + 1) // 2], x[(n + 1) // 2 :]
    out["levene"] = stats.levene(first, second, center="median").statistic
    out["bartlett"] = stats.bartlett(first, second).statistic
    q = min(10, n // 20)
    out["arch_lm"] = het_arch(x - x.mean(), nlags=q)[0]
    out["kruskal_wallis"] = kruskal_weekly(x)
    return out


def main():
    print(f"// statsmodels {statsmodels.__version__}, scipy {scipy.__version__}, arch {arch_version}")
    print("// columns: " + ", ".join(COLUMNS))
    for name in FIXTURES:
        x = pd.read_csv(DATA / f"{name}.csv")["value"].to_numpy(dtype=float)
        ref = reference(x)
        body = ", ".join(repr(float(ref[c])) for c in COLUMNS)
        print(f'    {{"{name}", {{{body}}}}},')


if __name__ == "__main__":
    main()
