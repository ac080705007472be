#!/usr/bin/env python3
# Copyright 2026 The mespp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Solves an LP-format MILP with HiGHS and writes a mespp solution file.

Usage: highs_solve.py MODEL.lp OUT.sol TIMEOUT THREADS GAP PRESOLVE

PRESOLVE is "on" or "off". The solution file holds `status`, `objective`
and `gap` lines followed by one `name value` line per column.
"""

import sys

import highspy


def main(argv):
    if len(argv) != 7:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    lp, out, timeout, threads, gap, presolve = argv[1:]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", float(timeout))
    h.setOptionValue("threads", int(threads))
    h.setOptionValue("mip_rel_gap", float(gap))
    h.setOptionValue("mip_abs_gap", 1e-10)
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    h.setOptionValue("presolve", "off" if presolve == "off" else "on")
    # HiGHS 1.15.1 can report an invalid dual bound after a root restart and
    # prune the true optimum; observed on small search-path models.
    h.setOptionValue("mip_allow_restart", False)
    if h.readModel(lp) != highspy.HighsStatus.kOk:
        print(f"cannot read model {lp}", file=sys.stderr)
        return 1
    h.run()

    status = h.getModelStatus()
    info = h.getInfo()
    has_solution = info.primal_solution_status == 2
    ms = highspy.HighsModelStatus
    if status == ms.kOptimal:
        name = "optimal"
    elif status in (ms.kTimeLimit, ms.kInterrupt) and has_solution:
        name = "feasible-timeout"
    elif status == ms.kInfeasible:
        name = "infeasible"
    else:
        name = "error"

    lines = [f"status {name}"]
    if name in ("optimal", "feasible-timeout"):
        lines.append(f"objective {info.objective_function_value!r}")
        lines.append(f"gap {max(0.0, info.mip_gap)!r}")
        names = h.getLp().col_names_
        values = h.getSolution().col_value
        lines.extend(f"{n} {float(v)!r}" for n, v in zip(names, values))
    with open(out, "w") as f:
        f.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
