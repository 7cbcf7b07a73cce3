# Running property suites from Python; the CLI `twistor-morphisms verify`
# prints the same reports.
import json

from twistor_morphisms import SuiteConfig, run_suite
from twistor_morphisms.harness import SUITES

for name in SUITES:
    rep = run_suite(SuiteConfig(name, trials=20, seed=1))
    print(f"{'PASS' if rep.passed else 'FAIL'}  {name:20s} {rep.pass_count:3d}/{rep.trials}  "
          f"max residual {rep.max_residual:.2e}")

print(json.dumps(run_suite(SuiteConfig("roundtrip", trials=5, seed=7)).to_dict(wall_time=False), indent=1))
