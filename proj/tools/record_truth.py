#!/usr/bin/env python3
"""Record host-Python verdicts for a corpus entry.

Runs the entry's parser under the real interpreter on a deterministic mix of
random strings over the declared test alphabet, inputs generated by
`adhoc fuzz`, and single-character mutations of those, then writes
`<name>.truth.tsv`. A `.pir` entry carries its host equivalent in
`# host:` comment lines.

usage: record_truth.py ADHOC_BINARY ENTRY_SOURCE...
"""

import inspect
import random
import subprocess
import sys
from pathlib import Path

VISIBLE_SPACE = "␣"
ESCAPES = {" ": VISIBLE_SPACE, "\\": "\\\\", "\t": "\\t", "\n": "\\n",
           "\v": "\\v", "\f": "\\f", "\r": "\\r"}


def escape(text):
    out = []
    for c in text:
        if c in ESCAPES:
            out.append(ESCAPES[c])
        elif ord(c) < 0x20 or ord(c) >= 0x7F:
            out.append("\\x%02x" % ord(c))
        else:
            out.append(c)
    return "".join(out)


def unescape(text):
    text = text.replace(VISIBLE_SPACE, " ")
    out, i = [], 0
    while i < len(text):
        c = text[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        n = text[i + 1]
        if n == "x":
            out.append(chr(int(text[i + 2:i + 4], 16)))
            i += 4
            continue
        out.append({"\\": "\\", "t": "\t", "n": "\n", "v": "\v", "f": "\f",
                    "r": "\r", "s": " "}[n])
        i += 2
    return "".join(out)


def host_parser(path):
    source = path.read_text()
    if path.suffix == ".pir":
        source = "\n".join(l.split("# host:", 1)[1][1:]
                           for l in source.splitlines() if "# host:" in l)
    code = compile(source, str(path), "exec")
    if "def " not in source:
        # A one-liner over a free `s`. map is lazy on the host; the model
        # treats it as eager, so bound map objects are forced.
        def run(s):
            scope = {"s": s}
            exec(code, scope)
            for value in scope.values():
                if isinstance(value, map):
                    list(value)
        return run
    scope = {}
    exec(code, scope)
    funcs = [v for v in scope.values()
             if inspect.isfunction(v) and v.__code__.co_filename == str(path)]
    return funcs[0]


def accepts(parser, text):
    try:
        parser(text)
    except Exception:  # any host exception is a rejection
        return False
    return True


def alphabet_of(path):
    for line in path.read_text().splitlines():
        if "test-alphabet:" in line:
            return "".join(dict.fromkeys(unescape(line.split("test-alphabet:", 1)[1].strip())))
    raise SystemExit(f"{path}: no test-alphabet declaration")


def main():
    binary, sources = sys.argv[1], [Path(p) for p in sys.argv[2:]]
    for path in sources:
        name = path.stem
        rng = random.Random(name)
        alphabet = alphabet_of(path)
        parser = host_parser(path)
        fuzzed = subprocess.run([binary, "fuzz", str(path), "-n", "60", "--seed", "1"],
                                check=True, capture_output=True, text=True).stdout.splitlines()
        fuzzed = [unescape(l) for l in fuzzed]
        inputs = ["", " "] + fuzzed
        for s in fuzzed:
            i = rng.randrange(len(s) + 1)
            c = rng.choice(alphabet)
            inputs.append(s[:i] + c + s[i:])
            if s:
                j = rng.randrange(len(s))
                inputs.append(s[:j] + s[j + 1:])
        for _ in range(80):
            inputs.append("".join(rng.choice(alphabet) for _ in range(rng.randrange(9))))
        seen, rows = set(), []
        for s in inputs:
            if s in seen:
                continue
            seen.add(s)
            rows.append(f"{escape(s)}\t{'accept' if accepts(parser, s) else 'reject'}")
        out = path.with_name(name + ".truth.tsv")
        out.write_text(f"# {name}: verdicts recorded with Python {sys.version.split()[0]}\n"
                       + "\n".join(rows) + "\n")
        accepted = sum(r.endswith("accept") for r in rows)
        print(f"{out}: {len(rows)} rows, {accepted} accepted")


if __name__ == "__main__":
    main()
