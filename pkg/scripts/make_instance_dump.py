"""Write a campaign file of seeded random instances, readable by ``specsetlab verify --instance``."""

import argparse
import json
from pathlib import Path

from specsetlab.compiler.repos import RandomRepository
from specsetlab.utils.load_config import load_config


def make_dump(kind="annulus", count=10, seed=0, dir="./tmp/instances.json", config=None):
    config = config or load_config()
    campaign = config.campaign
    instances = [
        RandomRepository(
            "warning",
            config,
            kind=kind,
            n_dim=campaign.n_dim,
            seed=seed + i,
            radius=campaign.radius,
            theta=campaign.theta,
            degree=campaign.degree,
            block_size=campaign.block_size,
        ).load_as_dict()
        for i in range(count)
    ]
    path = Path(dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"instances": instances}, indent=2))
    return path


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", default="annulus")
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="./tmp/instances.json")
    args = parser.parse_args()
    make_dump(args.kind, args.count, args.seed, args.out)
