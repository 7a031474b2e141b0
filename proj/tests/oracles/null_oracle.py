#!/usr/bin/env python3
"""Independent Monte-Carlo oracle for the null (uncoupled) behaviour of the
LZ-based transfer entropy rate estimator.

Everything here is written from scratch with naive substring search on
Python strings and numpy's generator; nothing is shared with the C++ code.
Results are frozen into tests/fixtures/null_oracle.json.

Usage: null_oracle.py [--seeds 100] [--out tests/fixtures/null_oracle.json]
"""
import argparse
import json
import math

import numpy as np


def lz76_count(symbols):
    """Word count by brute force: a word grows while it still occurs in the
    text strictly before its last character."""
    s = "".join(chr(0x100 + int(v)) for v in symbols)
    n_total = len(s)
    count = 0
    p = 0
    while p < n_total:
        n = p
        while n < n_total and s[p:n + 1] in s[:n]:
            n += 1
        count += 1
        p = n + 1
    return count


def rate(symbols, log_alphabet):
    c = lz76_count(symbols)
    return c * (log_alphabet + math.log(c)) / len(symbols)


def rows(target, source, m, tau):
    t_len = len(target)
    n_rows = t_len - m * tau
    out = np.empty((n_rows, 2 * m + 1), dtype=np.int64)
    for r in range(n_rows):
        t = m * tau + r
        for i in range(m):
            lag = (m - i) * tau
            out[r, i] = source[t - lag]
            out[r, m + i] = target[t - lag]
        out[r, 2 * m] = target[t]
    return out


def encode(mat):
    weights = 2 ** np.arange(mat.shape[1], dtype=np.int64)
    return mat @ weights


def directed(target, source, m, tau):
    v = rows(target, source, m, tau)
    h_joint = rate(encode(v), (2 * m + 1) * math.log(2))
    h_target = rate(encode(v[:, m:]), (m + 1) * math.log(2))
    return h_target - h_joint, h_joint, v


def surrogate(v, m, k, rng):
    n = v.shape[0]
    acc = 0.0
    for _ in range(k):
        idx = rng.integers(0, n, size=n)
        vk = v.copy()
        vk[:, :m] = v[idx, :m]
        acc += rate(encode(vk), (2 * m + 1) * math.log(2))
    return -acc / k


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--length", type=int, default=10000)
    ap.add_argument("-m", type=int, default=3)
    ap.add_argument("--tau", type=int, default=1)
    ap.add_argument("-K", type=int, default=30)
    ap.add_argument("--out", default="tests/fixtures/null_oracle.json")
    args = ap.parse_args()

    directed_abs = []
    surr_gap = []
    globals_ = []
    for seed in range(args.seeds):
        rng = np.random.default_rng(1_000_003 + seed)
        x = rng.integers(0, 2, size=args.length)
        y = rng.integers(0, 2, size=args.length)
        t_yx, h_yx, v_yx = directed(x, y, args.m, args.tau)
        t_xy, h_xy, v_xy = directed(y, x, args.m, args.tau)
        s_yx = surrogate(v_yx, args.m, args.K, rng)
        s_xy = surrogate(v_xy, args.m, args.K, rng)
        directed_abs += [abs(t_yx), abs(t_xy)]
        surr_gap += [-s_yx - h_yx, -s_xy - h_xy]
        globals_.append((t_yx - t_xy) - (s_yx - s_xy))
        print(f"seed {seed}: t_yx={t_yx:.5f} t_xy={t_xy:.5f} "
              f"global={globals_[-1]:.5f}", flush=True)

    result = {
        "length": args.length,
        "m": args.m,
        "tau": args.tau,
        "K": args.K,
        "seeds": args.seeds,
        "directed_abs_p99": float(np.percentile(directed_abs, 99)),
        "directed_abs_mean": float(np.mean(directed_abs)),
        "directed_abs_sd": float(np.std(directed_abs)),
        "surrogate_gap_mean": float(np.mean(surr_gap)),
        "surrogate_gap_abs_max": float(np.max(np.abs(surr_gap))),
        "global_p025": float(np.percentile(globals_, 2.5)),
        "global_p975": float(np.percentile(globals_, 97.5)),
        "global_median": float(np.median(globals_)),
    }
    with open(args.out, "w") as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")
    print(json.dumps(result, indent=2))


if __name__ == "__main__":
    main()
