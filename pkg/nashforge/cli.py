"""
Command line front end: input files, task dispatch, reports and the batch runner.

    nashforge <task> --input FILE [--order N] [--format json|text] [--verify] [--budget STEPS]
    nashforge batch FILE... [--jobs N] [--outdir DIR]
"""
if __package__=="nashforge":
    from .utils import *
    from .algebra import *
    from .tasks import *
else:
    import os, sys
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from utils import *
    from algebra import *
    from tasks import *

import argparse
import traceback
import configparser
from concurrent.futures import ProcessPoolExecutor


SECTIONS = {
    "variety": ("characteristic", "variables", "ideal", "point"),
    "group": ("matrices",),
    "task": ("kind", "order", "e", "depth", "cutoff", "multiplier"),
}
INT_TASK_KEYS = ("order", "e", "depth", "cutoff")
SCHEMA_PATH = Path(__file__).parent / "schema" / (SCHEMA_VERSION + ".schema.json")
INPUTS_DIR = Path(__file__).parent / "inputs"


########################################################################################################################
# Input files
########################################################################################################################

def _key_line(lines, section:str, key:str):
    """1-based line of `key` inside `[section]`, or None."""
    current = None
    pattern = re.compile(r"\s*%s\s*[=:]" % re.escape(key), re.IGNORECASE)
    for k, line in enumerate(lines, start=1):
        header = re.fullmatch(r"\s*\[([^\]]+)\]\s*", line)
        if header:
            current = header.group(1).strip().lower()
        elif current == section and pattern.match(line):
            return k
    return None


def _read_config(text:str):
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",), strict=True)
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as err:
        raise ParseError("expected a section header such as [variety]", line=err.lineno, column=1)
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as err:
        raise ParseError(err.message.split("\n")[0], line=err.lineno)
    except configparser.ParsingError as err:
        lineno = err.errors[0][0] if err.errors else None
        raise ParseError("malformed line", line=lineno, column=1)
    for section in parser.sections():
        name = section.strip().lower()
        if name not in SECTIONS:
            raise ParseError("unknown section [%s]; expected one of %s" % (section, ", ".join(SECTIONS)),
                             line=_section_line(text, name))
        for key in parser[section]:
            if key not in SECTIONS[name]:
                raise ParseError("unknown key '%s' in [%s]" % (key, name), line=_key_line(text.splitlines(), name, key))
    return {s.strip().lower(): dict(parser[s]) for s in parser.sections()}


def _section_line(text:str, name:str):
    for k, line in enumerate(text.splitlines(), start=1):
        if re.fullmatch(r"\s*\[\s*%s\s*\]\s*" % re.escape(name), line, re.IGNORECASE):
            return k
    return None


def _json_value(raw:str, line:int, what:str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError as err:
        raise ParseError("%s is not valid JSON: %s" % (what, err.msg),
                         line=(line + err.lineno - 1) if line else None, column=err.colno)


def _generator_strings(raw:str, line:int):
    raw = raw.strip()
    if not raw:
        return []
    if raw.startswith("["):
        items = _json_value(raw, line, "ideal")
        if not isinstance(items, list) or not all(isinstance(g, (str, int)) and not isinstance(g, bool) for g in items):
            raise ParseError("ideal must be a JSON list of polynomial strings", line=line)
        return [str(g) for g in items]
    return [g.strip() for g in raw.split(";") if g.strip()]


def _matrices(raw:str, line:int):
    value = _json_value(raw, line, "matrices")
    ok = isinstance(value, list) and all(
        isinstance(m, list) and all(isinstance(r, list) for r in m) for m in value)
    if not ok:
        raise ParseError("matrices must be a JSON list of matrices (lists of rows)", line=line)
    for m in value:
        for row in m:
            for v in row:
                if isinstance(v, bool) or not isinstance(v, (int, str)):
                    raise ParseError("matrix entries must be integers or 'a/b' strings, got %r" % (v,), line=line)
    return value


def parse_variety_text(text:str, path:str=None, point:str=None):
    """
    Parse and validate the text of an input file.

    ### Args:
        - `text` (str): File contents (the `[variety]`/`[group]`/`[task]` grammar of README.md).
        - `path` (str): Where it came from, for messages.
        - `point` (str): Comma-separated point overriding the file's `point` key.

    ### Returns:
        A `VarietyInput` whose ideal has been moved so that the point is the origin.
    """
    lines = text.splitlines()
    blocks = _read_config(text)
    if "variety" not in blocks:
        raise ParseError("missing [variety] section", line=1)
    variety = blocks["variety"]
    for key in ("characteristic", "variables"):
        if key not in variety:
            raise ParseError("missing key '%s' in [variety]" % key, line=_section_line(text, "variety"))

    line = _key_line(lines, "variety", "characteristic")
    raw = variety["characteristic"].strip()
    if not re.fullmatch(r"\d+", raw):
        raise ParseError("characteristic must be a non-negative integer, got %r" % raw, line=line)
    field = FieldSpec(int(raw))

    line = _key_line(lines, "variety", "variables")
    names = [v for v in re.split(r"[,\s]+", variety["variables"].strip()) if v]
    if not names:
        raise ParseError("no variables declared", line=line)
    try:
        ctx = PolyContext(tuple(names), field)
    except InputError as err:
        raise ParseError(str(err), line=line)

    line = _key_line(lines, "variety", "ideal")
    generators = _generator_strings(variety.get("ideal", ""), line)
    polys = []
    for g in generators:
        try:
            polys.append(ctx.parse(g))
        except ParseError as err:
            raise err.located(line)
        except FieldMismatchError as err:
            raise FieldMismatchError("%s (line %s)" % (err, line))

    raw_point = point if point is not None else variety.get("point")
    coords = None
    if raw_point is not None and raw_point.strip():
        line = _key_line(lines, "variety", "point") if point is None else None
        parts = [a.strip() for a in raw_point.strip().strip("()").split(",")]
        if len(parts) != ctx.ngens:
            raise ParseError("point has %d coordinates, the ring has %d variables" % (len(parts), ctx.ngens), line=line)
        values = []
        for a in parts:
            try:
                values.append(field.parse_scalar(a))
            except ParseError as err:
                raise err.located(line) if line else err
        coords = tuple(field.format_scalar(v) for v in values)
        polys = [ctx.translate(f, values) for f in polys]
        for raw_g, f in zip(generators, polys):
            if f.const():
                raise PointNotOnVarietyError("the point (%s) is not on V(I): %s does not vanish there"
                                             % (", ".join(coords), raw_g))
    else:
        for raw_g, f in zip(generators, polys):
            if f.const():
                raise PointNotOnVarietyError("the origin is not on V(I): %s does not vanish there; give a point" % raw_g)

    group = None
    if "group" in blocks:
        if "matrices" not in blocks["group"]:
            raise ParseError("missing key 'matrices' in [group]", line=_section_line(text, "group"))
        group = _matrices(blocks["group"]["matrices"], _key_line(lines, "group", "matrices"))

    task = {}
    for key, value in blocks.get("task", {}).items():
        value = value.strip()
        if key in INT_TASK_KEYS:
            if not re.fullmatch(r"\d+", value):
                raise ParseError("%s must be a positive integer, got %r" % (key, value), line=_key_line(lines, "task", key))
            task[key] = int(value)
        else:
            task[key] = value

    source = text if point is None else text + "\n# point override: %s\n" % point.strip()
    ideal = Ideal(ctx, polys)
    if ideal.is_unit:
        raise InputError("the ideal is the unit ideal; V(I) is empty")
    return VarietyInput(ctx, generators, ideal, coords, group, task, source, path)


def parse_variety_file(path, point:str=None):
    path = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError("cannot read %s: %s" % (path, err.strerror or err))
    return parse_variety_text(text, path=path, point=point)


########################################################################################################################
# Tasks and reports
########################################################################################################################

def task_kind(name:str):
    kind = name.strip().lower().replace("_", "-")
    if kind not in taskdict:
        raise InputError("unknown task '%s'; expected one of %s" % (name, ", ".join(sorted(taskdict))))
    return kind


def run_task(inp:VarietyInput, kind:str=None, options:dict=None):
    """
    Run one task on a parsed input and return its `Report`.

    Options come from `Task.sample_options`, then the file's `[task]` block, then `options` (None values skipped).
    """
    file_options = dict(inp.task or {})
    kind = task_kind(kind or file_options.pop("kind", "") or "")
    file_options.pop("kind", None)
    merged = dict(Task.sample_options)
    merged.update(file_options)
    for key, value in (options or {}).items():
        if value is not None:
            merged[key] = value
    return taskdict[kind](merged).run(inp)


def emit_report(report:Report, fmt:str="json"):
    if fmt == "json":
        return report.to_json().encode("utf-8")
    if fmt == "text":
        return report.to_text().encode("utf-8")
    raise InputError("unknown report format '%s'" % fmt)


def rederive_verdict(report:dict):
    """The verdict a JSON report's evidence implies, computed from the evidence fields alone."""
    return taskdict[task_kind(report["task"])].verdict_from_evidence(report["evidence"])


def load_schema():
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


def _run_one(path:str, kind:str, options:dict, budget:int):
    if budget is not None:
        set_budget(budget)
    try:
        report = run_task(parse_variety_file(path), kind, options)
        return path, report.to_json(), report.task, report.verdict, 0
    except NashforgeError as err:
        return path, None, kind or "-", "ERROR: %s" % err, err.exit_code
    except Exception as err:
        return path, None, kind or "-", "INTERNAL ERROR: %s: %s" % (type(err).__name__, err), INTERNAL_ERROR_EXIT


def batch(paths, jobs:int=1, outdir:str=None, kind:str=None, options:dict=None, budget:int=None, verbose:int=0):
    """
    Run every input file (each with its own `[task] kind` unless `kind` is given), write one JSON report per input
    into `outdir` and print a verdict table. Returns the largest exit code met.
    """
    paths = [str(p) for p in paths]
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, paths, [kind]*len(paths), [options]*len(paths), [budget]*len(paths)))
    else:
        results = [_run_one(p, kind, options, budget) for p in paths]
    worst = 0
    for path, text, task, verdict, code in results:
        if text is not None and outdir:
            target = make_path(str(Path(outdir) / (Path(path).stem + ".json")))
            Path(target).write_text(text, encoding="utf-8")
        print("%s\t%s\t%s" % (path, task, verdict))
        log("batch: %s done with exit code %d" % (path, code), verbose)
        worst = max(worst, code)
    return worst


########################################################################################################################
# Entry point
########################################################################################################################

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="order n (default 1)")
    common.add_argument("--e", type=int, default=None, help="Frobenius power for kunz (default 1)")
    common.add_argument("--depth", type=int, default=None, help="core chain depth (default %d)" % DEFAULT_CORE_DEPTH)
    common.add_argument("--cutoff", type=int, default=None, help="jets oracle degree cutoff")
    common.add_argument("--multiplier", default=None, help="torsion multiplier c for pparts")
    common.add_argument("--verify", action="store_true", help="run the independent cross-checks")
    common.add_argument("--timing", action="store_true", help="fill the ms field")
    common.add_argument("--budget", type=int, default=None, help="reduction step budget (env %s)" % BUDGET_ENV)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="nashforge", description="Exact invariants of Nash blowups at a point.")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in taskdict:
        p = sub.add_parser(kind, parents=[common], help=(taskdict[kind].__doc__ or "").strip().split("\n")[0])
        p.add_argument("--input", required=True, help="input file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--point", default=None, help="comma-separated point, overrides the file")
    p = sub.add_parser("batch", parents=[common], help="run many input files")
    p.add_argument("files", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--outdir", default=None)
    p.add_argument("--task", default=None, help="task for every file instead of its [task] kind")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    options = {
        "order": args.order, "e": args.e, "depth": args.depth, "cutoff": args.cutoff,
        "multiplier": args.multiplier, "verify": args.verify or None, "timing": args.timing or None,
        "verbose": args.verbose or None,
    }
    try:
        if args.budget is not None:
            set_budget(args.budget)
        else:
            get_budget()
        if args.command == "batch":
            return batch(args.files, args.jobs, args.outdir, args.task, options, args.budget, args.verbose)
        inp = parse_variety_file(args.input, point=args.point)
        report = run_task(inp, args.command, options)
        sys.stdout.write(emit_report(report, args.format).decode("utf-8"))
        return 0
    except NashforgeError as err:
        print("nashforge: error: %s" % err, file=sys.stderr)
        return err.exit_code
    except Exception as err:
        if args.verbose:
            traceback.print_exc()
        print("nashforge: internal error: %s: %s" % (type(err).__name__, err), file=sys.stderr)
        return INTERNAL_ERROR_EXIT
    finally:
        set_budget(None)


if __name__ == '__main__':
    sys.exit(main())
