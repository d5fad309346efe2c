"""Command-line interface.

Subcommands mirror the pipeline stages: validate, convert, project,
sanity, score, decode, stats.  Reports go to standard output as TSV
(JSON records via ``--format records``), diagnostics to standard error.
Exit codes: 0 success, 1 data errors, 2 usage errors.  All outputs are
byte-deterministic for a fixed input and configuration, including under
``-j N`` parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Sequence, TextIO

from .alignments import parse_alignments
from .canonical import parse_canonical, write_canonical
from .conll import parse_conll, write_conll
from .core import CorefDataError, Document, validate_document
from .decoder import decode, parse_score_records
from .metrics import METRIC_NAMES, ScoreReport, score_corpus
from .projection import (
    RateRow,
    SanityConfig,
    check_translation_sanity,
    project_document,
)
from .rendering import render_percent, render_score
from .stats import CorpusStats, corpus_stats, split_antecedent_ratio

_STATS_FIELDS = (
    ("sents", "n_sents"),
    ("mentions", "n_mentions"),
    ("clusters_total", "n_clusters_total"),
    ("clusters_multi", "n_clusters_multi"),
    ("split_antecedents", "n_split_antecedents"),
    ("singletons", "n_singletons"),
    ("docs", "n_docs"),
)


def _read_text(path: str) -> str:
    with open(path, "rb") as handle:
        return handle.read().decode("utf-8")


def _write_text(path: str, text: str, stdout: TextIO) -> None:
    if path == "-":
        stdout.write(text)
    else:
        with open(path, "wb") as handle:
            handle.write(text.encode("utf-8"))


def _load_docs(path: str, fmt: str, language: str) -> list[Document]:
    data = _read_text(path)
    if fmt == "conll":
        return parse_conll(data, language=language)
    return parse_canonical(data)


def _exact(value: Fraction) -> dict[str, str]:
    return {"exact": f"{value.numerator}/{value.denominator}", "display": render_score(value)}


def _emit_report(report: ScoreReport, fmt: str, stdout: TextIO, stderr: TextIO) -> None:
    for message in report.warnings:
        stderr.write(f"warning: {message}\n")
    if fmt == "records":
        record = {
            "metrics": {
                name: {
                    side: _exact(getattr(report.metrics[name], side))
                    for side in ("precision", "recall", "f1")
                }
                for name in METRIC_NAMES
            },
            "conll_f1": _exact(report.conll_f1),
            "singletons": report.singletons,
            "split": report.split,
            "warnings": list(report.warnings),
        }
        stdout.write(json.dumps(record, ensure_ascii=False) + "\n")
        return
    stdout.write("metric\tprecision\trecall\tf1\n")
    for name in METRIC_NAMES:
        prf = report.metrics[name]
        stdout.write(
            f"{name}\t{render_score(prf.precision)}\t"
            f"{render_score(prf.recall)}\t{render_score(prf.f1)}\n"
        )
    stdout.write(f"conll_f1\t-\t-\t{render_score(report.conll_f1)}\n")


def _emit_rate_rows(rows: Sequence[RateRow], fmt: str, stdout: TextIO) -> None:
    if fmt == "records":
        for row in rows:
            aligned, misaligned, non_aligned = row.summary.rates()
            stdout.write(
                json.dumps(
                    {
                        "group": row.group,
                        "mentions": row.summary.total,
                        "aligned": row.summary.aligned,
                        "misaligned": row.summary.misaligned,
                        "non_aligned": row.summary.non_aligned,
                        "aligned_pct": render_percent(aligned),
                        "misaligned_pct": render_percent(misaligned),
                        "non_aligned_pct": render_percent(non_aligned),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
        return
    stdout.write("group\tmentions\taligned\tmisaligned\tnon_aligned\n")
    for row in rows:
        aligned, misaligned, non_aligned = row.summary.rates()
        stdout.write(
            f"{row.group}\t{row.summary.total}\t{render_percent(aligned)}\t"
            f"{render_percent(misaligned)}\t{render_percent(non_aligned)}\n"
        )


def _stats_cells(stats: CorpusStats) -> list[int]:
    return [getattr(stats, attr) for _, attr in _STATS_FIELDS]


def _ratio_cell(stats: CorpusStats) -> str:
    if stats.n_mentions == 0:
        return "-"
    return render_percent(split_antecedent_ratio(stats) / 100)


# --- subcommand handlers ---------------------------------------------------


def _cmd_validate(args, stdout: TextIO, stderr: TextIO) -> int:
    docs = _load_docs(args.input, getattr(args, "from"), args.language)
    bad = 0
    for doc in docs:
        for violation in validate_document(doc):
            stdout.write(f"{doc.doc_key}\t{violation}\n")
            bad += 1
    stderr.write(f"{len(docs)} document(s), {bad} violation(s)\n")
    return 1 if bad else 0


def _cmd_convert(args, stdout: TextIO, stderr: TextIO) -> int:
    docs = _load_docs(args.input, getattr(args, "from"), args.language)
    if args.to == "conll":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text = write_conll(docs)
        for item in caught:
            stderr.write(f"warning: {item.message}\n")
    else:
        text = write_canonical(docs)
    _write_text(args.output, text, stdout)
    return 0


def _cmd_sanity(args, stdout: TextIO, stderr: TextIO) -> int:
    config = SanityConfig(repeat_fraction=args.repeat_fraction, min_run=args.min_run)
    stdout.write("line\tverdict\treason\n")
    for line_no, line in enumerate(_read_text(args.input).splitlines(), start=1):
        verdict = check_translation_sanity(line, config)
        status = "pass" if verdict.passed else "fail"
        stdout.write(f"{line_no}\t{status}\t{verdict.reason or '-'}\n")
    return 0


def _cmd_project(args, stdout: TextIO, stderr: TextIO) -> int:
    docs = _load_docs(args.input, getattr(args, "from"), args.language)
    maps = parse_alignments(_read_text(args.alignments))
    target_lines = [
        line.split() for line in _read_text(args.target_sents).splitlines()
    ]
    expected = sum(len(doc.sentences) for doc in docs)
    if len(maps) != expected or len(target_lines) != expected:
        raise CorefDataError(
            f"corpus has {expected} sentences but got {len(maps)} alignment "
            f"lines and {len(target_lines)} target sentences"
        )
    targets = []
    items = []
    offset = 0
    for doc in docs:
        n = len(doc.sentences)
        target, summary = project_document(
            doc,
            maps[offset : offset + n],
            target_lines[offset : offset + n],
            target_language=args.target_language,
        )
        offset += n
        targets.append(target)
        items.append((target.language, summary))
    _write_text(args.output, write_canonical(targets), stdout)

    from .projection import aggregate_projection_stats

    rows = aggregate_projection_stats(items)
    _emit_rate_rows(rows, args.format, stdout)
    if args.plot_dir and rows:
        from . import plots

        plots.ensure_plot_dir(args.plot_dir)
        plots.plot_projection_rates(rows, f"{args.plot_dir}/projection_rates.png")
    return 0


def _cmd_score(args, stdout: TextIO, stderr: TextIO) -> int:
    fmt_in = getattr(args, "from")
    key_docs = _load_docs(args.key, fmt_in, args.language)
    response_docs = _load_docs(args.response, fmt_in, args.language)
    report = score_corpus(
        key_docs,
        response_docs,
        singletons=args.singletons,
        split=args.split,
        jobs=args.jobs,
    )
    _emit_report(report, args.format, stdout, stderr)
    if args.plot_dir:
        from . import plots

        plots.ensure_plot_dir(args.plot_dir)
        plots.plot_score_report(report, f"{args.plot_dir}/score_report.png")
    return 0


def _cmd_decode(args, stdout: TextIO, stderr: TextIO) -> int:
    docs = {doc.doc_key: doc for doc in parse_canonical(_read_text(args.docs))}
    out = []
    for doc_key, scores in parse_score_records(_read_text(args.scores)):
        if doc_key not in docs:
            raise CorefDataError(f"score record for unknown document {doc_key!r}")
        doc = docs[doc_key]
        decoded = Document(
            doc_key=doc.doc_key,
            language=doc.language,
            sentences=doc.sentences,
            entities=tuple(decode(scores)),
        )
        violations = validate_document(decoded)
        if violations:
            raise CorefDataError(
                f"document {doc_key!r}: decoded clusters are invalid: "
                + "; ".join(violations)
            )
        out.append(decoded)
    _write_text(args.output, write_canonical(out), stdout)
    stderr.write(f"decoded {len(out)} document(s)\n")
    return 0


def _cmd_stats(args, stdout: TextIO, stderr: TextIO) -> int:
    fmt_in = getattr(args, "from")
    group_by = None if args.group_by == "none" else args.group_by
    split_names = []
    tables = []
    for path in args.inputs:
        docs = _load_docs(path, fmt_in, args.language)
        name = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        split_names.append(name)
        tables.append(corpus_stats(docs, group_by, jobs=args.jobs))

    groups = sorted({group for table in tables for group, _ in table.rows})
    multi = len(tables) > 1

    def collect(group: str | None) -> list[CorpusStats]:
        if group is None:
            return [table.total for table in tables]
        found = [dict(table.rows).get(group, CorpusStats()) for table in tables]
        return found

    def render_row(label: str, per_split: list[CorpusStats]) -> None:
        pooled = sum(per_split, CorpusStats())
        if args.format == "records":
            for name, stats in zip(split_names, per_split):
                record = {"group": label, "split": name if multi else None}
                record.update(
                    {col: getattr(stats, attr) for col, attr in _STATS_FIELDS}
                )
                record["split_antecedent_pct"] = _ratio_cell(stats)
                stdout.write(json.dumps(record, ensure_ascii=False) + "\n")
            return
        if multi:
            cells = [
                "(" + ", ".join(str(v) for v in values) + ")"
                for values in zip(*(_stats_cells(s) for s in per_split))
            ]
        else:
            cells = [str(v) for v in _stats_cells(per_split[0])]
        stdout.write(
            label + "\t" + "\t".join(cells) + "\t" + _ratio_cell(pooled) + "\n"
        )

    if args.format != "records":
        if multi:
            stdout.write(f"# splits: {', '.join(split_names)}\n")
        header = [col for col, _ in _STATS_FIELDS]
        stdout.write("group\t" + "\t".join(header) + "\tsplit_antecedent_pct\n")
    for group in groups:
        render_row(group, collect(group))
    render_row("total", collect(None))

    if args.plot_dir:
        from . import plots

        rows = [(g, sum(collect(g), CorpusStats())) for g in groups]
        rows.append(("total", sum(collect(None), CorpusStats())))
        plots.ensure_plot_dir(args.plot_dir)
        plots.plot_corpus_stats(rows, f"{args.plot_dir}/corpus_stats.png")
    return 0


# --- parser ----------------------------------------------------------------


def _add_input_format(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--from",
        choices=("conll", "canonical"),
        default="canonical",
        help="input document format (default: canonical)",
    )
    sub.add_argument(
        "--language",
        default="",
        help="language code applied to documents parsed from CoNLL "
        "(the format carries none)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corefkit",
        description="Coreference scoring, projection, decoding, and statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="report document invariant violations")
    p.add_argument("--input", required=True)
    _add_input_format(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("convert", help="convert between conll and canonical")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="output path, '-' for stdout")
    _add_input_format(p)
    p.add_argument("--to", choices=("conll", "canonical"), required=True)
    p.set_defaults(handler=_cmd_convert)

    p = sub.add_parser("sanity", help="repeated-punctuation translation check")
    p.add_argument("--input", required=True, help="one sentence per line")
    p.add_argument("--repeat-fraction", type=float, default=0.9)
    p.add_argument("--min-run", type=int, default=5)
    p.set_defaults(handler=_cmd_sanity)

    p = sub.add_parser("project", help="project mentions via word alignments")
    p.add_argument("--input", required=True)
    _add_input_format(p)
    p.add_argument("--alignments", required=True, help="one 'i-j ...' line per sentence")
    p.add_argument("--target-sents", required=True, help="one tokenized sentence per line")
    p.add_argument("--output", required=True, help="canonical target documents")
    p.add_argument("--target-language", default=None)
    p.add_argument("--format", choices=("tsv", "records"), default="tsv")
    p.add_argument("--plot-dir", default=None)
    p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("score", help="score a response corpus against a key")
    p.add_argument("--key", required=True)
    p.add_argument("--response", required=True)
    _add_input_format(p)
    p.add_argument("--singletons", choices=("include", "exclude"), default="include")
    p.add_argument("--split", choices=("plain", "expanded"), default="plain")
    p.add_argument("--format", choices=("tsv", "records"), default="tsv")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--plot-dir", default=None)
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("decode", help="decode pairwise score records into clusters")
    p.add_argument("--scores", required=True, help="score records, one JSON per line")
    p.add_argument("--docs", required=True, help="canonical documents supplying sentences")
    p.add_argument("--output", required=True)
    p.set_defaults(handler=_cmd_decode)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("inputs", nargs="+", metavar="INPUT",
                   help="document files; several files are reported as splits")
    _add_input_format(p)
    p.add_argument("--group-by", choices=("none", "language"), default="none")
    p.add_argument("--format", choices=("tsv", "records"), default="tsv")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--plot-dir", default=None)
    p.set_defaults(handler=_cmd_stats)

    return parser


def run(
    argv: Sequence[str] | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "score" and args.split == "expanded" and getattr(args, "from") == "conll":
        stderr.write(
            "corefkit score: error: --split expanded requires --from canonical "
            "(CoNLL cannot carry plural links)\n"
        )
        return 2

    try:
        return args.handler(args, stdout, stderr)
    except CorefDataError as exc:
        stderr.write(f"corefkit {args.command}: error: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"corefkit {args.command}: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
