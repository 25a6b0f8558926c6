#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Chart executor for CG scoring.

Reads a matplotlib program on stdin, runs it headless and prints one JSON
line: {"ok": bool, "y_values": [...], "stderr": str}. y-values come from
line plots, bar heights and scatter points of every axes, in drawing order.
"""
import contextlib
import io
import json
import sys
import traceback

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.container import BarContainer  # noqa: E402


def collect(fig):
    ys = []
    for ax in fig.get_axes():
        bars = set()
        for container in ax.containers:
            if isinstance(container, BarContainer):
                horizontal = getattr(container, "orientation", "vertical") == "horizontal"
                for patch in container.patches:
                    bars.add(id(patch))
                    ys.append(patch.get_width() if horizontal else patch.get_height())
        for line in ax.get_lines():
            ys.extend(float(v) for v in line.get_ydata())
        for coll in ax.collections:
            offsets = coll.get_offsets()
            if len(offsets):
                ys.extend(float(p[1]) for p in offsets)
    return ys


def main():
    code = sys.stdin.read()
    shown = []
    plt.show = lambda *a, **k: shown.extend(plt.get_fignums())
    err = io.StringIO()
    ok = True
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(err):
        try:
            exec(compile(code, "<chart>", "exec"), {"__name__": "__main__"})
        except BaseException:  # the program under test may raise anything
            ok = False
            traceback.print_exc(file=err)
    ys = []
    if ok:
        for num in sorted(set(shown) | set(plt.get_fignums())):
            ys.extend(collect(plt.figure(num)))
    print(json.dumps({"ok": ok, "y_values": [float(v) for v in ys], "stderr": err.getvalue()[-4000:]}))


if __name__ == "__main__":
    main()
