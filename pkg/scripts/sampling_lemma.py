"""Empirical good-sample frequency against the exact hypergeometric value.

Balanced C5 blow-ups, r = 3. For each (part size, m) pair, draws
``--seeds`` uniform samples and prints the observed frequency next to the
exact probability that the sample is good.

    python3 scripts/sampling_lemma.py --parts 20 100 --m 20 30 60 100 --seeds 500
"""

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import blowup_good_sample_probability  # noqa: E402

from krhom import generators as gen  # noqa: E402
from krhom.cli import rational  # noqa: E402
from krhom.extraction import ExtractionParams, compute_params, good_sample, sample_subset  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--parts", type=int, nargs="+", default=[20, 100])
    ap.add_argument("--m", type=int, nargs="+", default=[20, 30, 60, 100])
    ap.add_argument("--eps", type=rational, default=Fraction(1, 15))
    ap.add_argument("--seeds", type=int, default=500)
    args = ap.parse_args(argv)

    print(f"# theoretical sample size for eps={args.eps}: m={compute_params(3, args.eps).m}")
    print(f"{'part':>5} {'n':>5} {'m':>5} {'empirical':>10} {'exact':>10}")
    for part in args.parts:
        g = gen.blow_up(gen.cycle(5), [part] * 5)[0]
        for m in args.m:
            if m > g.n:
                continue
            p = ExtractionParams(3, args.eps, m_override=m)
            hits = sum(good_sample(g, sample_subset(random.Random(s), g.n, m), p) for s in range(args.seeds))
            exact = blowup_good_sample_probability(part, m, 3, args.eps)
            print(f"{part:>5} {g.n:>5} {m:>5} {hits / args.seeds:>10.4f} {float(exact):>10.4f}")


if __name__ == "__main__":
    main()
