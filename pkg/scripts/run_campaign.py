"""Solve-rate campaign plus multi-model stalled audits; writes text and JSON reports.

    python scripts/run_campaign.py --n 2000 --seed 1 --out results/
"""

import argparse
import json
import time
from pathlib import Path

from resrules.campaign import completeness_audit, run_campaign, stalled_variants


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--stalled-audits", type=int, default=500)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = run_campaign(args.n, args.seed, jobs=args.jobs)
    audit = completeness_audit(stalled_variants(report, args.stalled_audits, args.seed))
    elapsed = time.perf_counter() - t0

    args.out.mkdir(parents=True, exist_ok=True)
    stem = f"campaign_n{args.n}_seed{args.seed}"
    text = report.to_text() + "".join(f"stalled_audit_{k}: {v}\n" for k, v in audit.summary().items())
    (args.out / f"{stem}.txt").write_text(text)
    payload = json.loads(report.to_json(with_records=True))
    payload["stalled_audit"] = audit.summary()
    (args.out / f"{stem}.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(text, end="")
    print(f"# elapsed {elapsed:.1f}s")


if __name__ == "__main__":
    main()
