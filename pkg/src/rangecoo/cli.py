"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 verification mismatch.
All positions are 1-based and ranges inclusive.  Query results print one
pair per line as TSV columns i, j, dist (or JSON with --format json).
"""

from __future__ import annotations

import json
import random
import sys
import time

import click

from rangecoo import closed as closed_mod
from rangecoo import oracle
from rangecoo.coo_index import RangeCooIndex, build_index
from rangecoo.index_io import IndexFileError

# test hook: when set, applied to every index query result inside `verify`
# (used to prove the harness catches deliberate faults)
_FAULT_HOOK = None


class _IOFail(click.ClickException):
    exit_code = 1


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise _IOFail(str(exc))


def _parse_span(text: str, name: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise click.UsageError(f"{name} must look like A:B")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise click.UsageError(f"{name} must be two integers A:B")


def _emit_pairs(pairs, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps([{"i": p.i, "j": p.j, "dist": p.dist} for p in pairs]))
    else:
        for p in pairs:
            click.echo(f"{p.i}\t{p.j}\t{p.dist}")


@click.group()
def main() -> None:
    """Index a text for windowed consecutive-occurrence queries."""


@main.command()
@click.option("--text", "text_file", required=True, help="Input text file.")
@click.option("--out", "out_file", required=True, help="Index file to write.")
@click.option("--with-segs", is_flag=True,
              help="Embed extracted segments so loading skips re-extraction.")
def build(text_file: str, out_file: str, with_segs: bool) -> None:
    """Build an index file from a text file and print structure stats."""
    data = _read_file(text_file)
    if len(data) == 0:
        raise click.UsageError("input text is empty")
    t0 = time.perf_counter()
    idx = build_index(data)
    try:
        idx.save(out_file, with_segments=with_segs)
    except OSError as exc:
        raise _IOFail(str(exc))
    s = idx.stats()
    wall_ms = (time.perf_counter() - t0) * 1000.0
    click.echo(
        f"n={s.n} nodes={s.nodes} paths={s.paths} "
        f"segments={s.segments} build_ms={wall_ms:.1f}"
    )


def _load_index(index_file: str) -> RangeCooIndex:
    try:
        return RangeCooIndex.load(index_file)
    except (OSError, IndexFileError) as exc:
        raise _IOFail(str(exc))


def _query_common(index_file, pattern, span):
    if not pattern:
        raise click.UsageError("pattern must be nonempty")
    a, b = _parse_span(span, "--range")
    idx = _load_index(index_file)
    if not 1 <= a <= b <= idx.n:
        raise click.UsageError(
            f"--range {a}:{b} is not a valid window of the {idx.n}-byte text"
        )
    return idx, pattern.encode("utf-8"), a, b


@main.group()
def query() -> None:
    """Run a query against a built index file."""


@query.command()
@click.option("--index", "index_file", required=True)
@click.option("--pattern", required=True)
@click.option("--range", "span", required=True, help="Window A:B (1-based).")
@click.option("-k", "k", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["tsv", "json"]), default="tsv")
def topk(index_file, pattern, span, k, fmt) -> None:
    """k closest consecutive occurrences in the window, sorted by distance."""
    if k < 0:
        raise click.UsageError("-k must be >= 0")
    idx, pat, a, b = _query_common(index_file, pattern, span)
    _emit_pairs(idx.query_topk(pat, a, b, k), fmt)


@query.command()
@click.option("--index", "index_file", required=True)
@click.option("--pattern", required=True)
@click.option("--range", "span", required=True, help="Window A:B (1-based).")
@click.option("--gap", required=True, help="Distance band G1:G2 (inclusive).")
@click.option("--format", "fmt", type=click.Choice(["tsv", "json"]), default="tsv")
def gap(index_file, pattern, span, gap, fmt) -> None:
    """All consecutive occurrences in the window with distance in the band."""
    g1, g2 = _parse_span(gap, "--gap")
    idx, pat, a, b = _query_common(index_file, pattern, span)
    _emit_pairs(idx.query_gap(pat, a, b, g1, g2), fmt)


@main.command(name="closed")
@click.option("--text", "text_file", required=True, help="Input text file.")
@click.option("--expand", is_flag=True,
              help="Emit every closed occurrence (start, end) instead of paths.")
def closed_cmd(text_file: str, expand: bool) -> None:
    """Emit the closed-substring representation of a text.

    Default output is one line per path: i, j, minLen, maxLen.  With
    --expand, one line per occurrence: start, end (singletons included),
    sorted.
    """
    data = _read_file(text_file)
    if len(data) == 0:
        raise click.UsageError("input text is empty")
    idx = build_index(data)
    paths = closed_mod.compute_closed_paths(idx)
    if expand:
        occs = sorted(closed_mod.enumerate_closed_occurrences(paths, data))
        for s, e in occs:
            click.echo(f"{s}\t{e}")
    else:
        for cp in paths:
            click.echo(f"{cp.pair.i}\t{cp.pair.j}\t{cp.min_len}\t{cp.max_len}")


def _random_text(rng: random.Random, n: int, alphabet: int) -> bytes:
    base = 97 if alphabet <= 26 else 0
    return bytes(base + rng.randrange(alphabet) for _ in range(n))


def _verify_cases(max_n: int, cases: int, alphabet: int, seed: int):
    """Deterministic stream of (text, queries); queries are
    ("topk", pattern, a, b, k) or ("gap", pattern, a, b, g1, g2)."""
    rng = random.Random(seed)
    for _ in range(cases):
        n = rng.randint(2, max_n)
        text = _random_text(rng, n, alphabet)
        patterns = []
        for _ in range(12):
            m = rng.randint(1, min(8, n))
            start = rng.randrange(n - m + 1)
            patterns.append(text[start : start + m])
        for _ in range(5):
            m = rng.randint(1, 8)
            cand = _random_text(rng, m, alphabet)
            if cand not in text:
                patterns.append(cand)
        queries = []
        for pat in patterns:
            a = rng.randint(1, n)
            b = rng.randint(a, n)
            queries.append(("topk", pat, a, b, rng.randint(0, n)))
            a = rng.randint(1, n)
            b = rng.randint(a, n)
            g1 = rng.randint(0, n)
            queries.append(("gap", pat, a, b, g1, rng.randint(g1 - 1, n)))
        yield text, queries


@main.command()
@click.option("--max-n", type=int, default=64, show_default=True)
@click.option("--cases", type=int, default=500, show_default=True)
@click.option("--alphabet", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def verify(max_n: int, cases: int, alphabet: int, seed: int) -> None:
    """Cross-check the index against brute-force scanning on random cases.

    Exits 0 when every query matches the reference output (order included),
    3 with a minimal reproducer on the first mismatch.
    """
    if max_n < 2:
        raise click.UsageError("--max-n must be >= 2")
    if alphabet < 1 or alphabet > 256:
        raise click.UsageError("--alphabet must be in [1, 256]")
    checked = 0
    for text, queries in _verify_cases(max_n, cases, alphabet, seed):
        idx = build_index(text)
        for q in queries:
            if q[0] == "topk":
                _, pat, a, b, k = q
                got = idx.query_topk(pat, a, b, k)
                want = oracle.topk_oracle(text, pat, a, b, k)
            else:
                _, pat, a, b, g1, g2 = q
                got = idx.query_gap(pat, a, b, g1, g2)
                want = oracle.gap_oracle(text, pat, a, b, g1, g2)
            if _FAULT_HOOK is not None:
                got = _FAULT_HOOK(got)
            checked += 1
            if got != want:
                click.echo("MISMATCH", err=True)
                click.echo(f"text={text!r}", err=True)
                click.echo(f"query={q!r}", err=True)
                click.echo(f"index={[(c.i, c.j) for c in got]!r}", err=True)
                click.echo(f"oracle={[(c.i, c.j) for c in want]!r}", err=True)
                sys.exit(3)
    click.echo(f"verified {checked} queries over {cases} cases: all match")


if __name__ == "__main__":
    main()
