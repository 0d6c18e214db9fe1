"""Run the full pipeline on the bundled fixtures and print the resulting map.

    python scripts/run_fixture.py [workdir] [seed]
"""

import json
import sys
from importlib import resources
from pathlib import Path

from artmap.cli import main


def run(workdir: Path, seed: int) -> int:
    data = resources.files("artmap") / "data"
    code = main([
        "pipeline",
        "--corpus", str(data / "fixture_corpus.jsonl"),
        "--explore-corpus", str(data / "fixture_explore.jsonl"),
        "--workdir", str(workdir),
        "--seed", str(seed),
    ])
    if code:
        return code
    m = json.loads((workdir / "map.json").read_text())
    print(f"fitness {m['fitness']:.4f}  coverage {m['coverage']:.4f}  squality {m['squality']:.4f}")
    for i, (stops, cov) in enumerate(zip(m["lines"], m["line_coverage"]), 1):
        print(f"  L{i}: {' -> '.join(stops)}  (coverage {cov:.3f})")
    kw = json.loads((workdir / "keywords.json").read_text())["keywords"]
    print("keywords:", ", ".join(kw))
    print((workdir / "histogram.csv").read_text())
    return 0


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("artmap-out")
    sys.exit(run(out, int(sys.argv[2]) if len(sys.argv) > 2 else 42))
