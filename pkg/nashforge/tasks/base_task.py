if __package__=="nashforge.tasks":
    from ..utils import *
    from ..algebra import *
else:
    import os, sys
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.append(parent_dir)
    from utils import *
    from algebra import *


IRREDUCIBLE_CAVEAT = "V(I) is assumed irreducible; irreducibility is not checked"


@dataclass
class VarietyInput:
    """
    A validated input file: the ring, the ideal moved to the origin, and the optional group and task blocks.

    `generators` keeps the ideal as written, `ideal` holds it in shifted coordinates when `point` is given.
    `source` is the text the content hash is taken over.
    """
    ctx: PolyContext
    generators: list
    ideal: Ideal
    point: tuple = None
    group: list = None
    task: dict = None
    source: str = ""
    path: str = None

    @property
    def characteristic(self):
        return self.ctx.field.characteristic

    @property
    def input_hash(self):
        return sha256_text(self.source)


def _jsonable(value):
    if isinstance(value, float) and math.isinf(value):
        return "infinite"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


@dataclass
class Report:
    """One task run. `to_json()` is byte-stable for a fixed input as long as `ms` is left at 0."""
    task: str
    input_hash: str
    characteristic: int
    dim: int
    order: int
    evidence: dict
    verdict: str
    caveats: list
    ms: int = 0

    def to_dict(self):
        return _jsonable(asdict(self))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self):
        lines = ["task:           %s" % self.task,
                 "verdict:        %s" % self.verdict,
                 "characteristic: %d" % self.characteristic,
                 "dim:            %s" % self.dim,
                 "order:          %s" % self.order,
                 "input_hash:     %s" % self.input_hash,
                 "evidence:"]
        for key in sorted(self.evidence):
            lines.append("  %s: %s" % (key, json.dumps(_jsonable(self.evidence[key]), sort_keys=True)))
        lines.append("caveats:")
        lines.extend("  - %s" % c for c in self.caveats)
        lines.append("ms:             %d" % self.ms)
        return "\n".join(lines) + "\n"


class Task:
    """
    Base class of the CLI tasks. Options live in one dictionary, read on top of `sample_options`.

    ### Usage

    `task = NashCheckTask(options)` where `options` may contain:
        - `order` (int): Order n of the computation. Defaults to 1.
        - `e` (int): Frobenius power for the Kunz test.
        - `depth` (int): Depth of the differential core chain.
        - `cutoff` (int): Degree cutoff of the jets oracle; None picks `default_cutoff`.
        - `multiplier` (str): Torsion multiplier c, parsed in the input ring; None uses the Jacobian minor.
        - `verify` (bool): Run the independent cross-checks and raise `ConsistencyError` on disagreement.
        - `timing` (bool): Fill `ms` in the report.
        - `verbose` (int): Progress on stderr if > 0.

    Subclasses set `name`, implement `compute(inp) -> (evidence, dim, order)` and the static
    `verdict_from_evidence(evidence)`, and may override `verify(inp, evidence)`.
    """
    name = "task"
    needs_domain = False

    sample_options = {
        'order': DEFAULT_ORDER,
        'e': 1,
        'depth': DEFAULT_CORE_DEPTH,
        'cutoff': None,
        'multiplier': None,
        'verify': False,
        'timing': False,
        'verbose': 0
    }

    def __init__(self, options:dict=None):
        if not options: options = self.sample_options
        self.options = options
        self._order = int(self._option(options, 'order'))
        self._e = int(self._option(options, 'e'))
        self._depth = int(self._option(options, 'depth'))
        self._cutoff = int(options['cutoff']) if options.get('cutoff') is not None else None
        self._multiplier = options.get('multiplier')
        self._verify = bool(options.get('verify'))
        self._timing = bool(options.get('timing'))
        self._verbose = int(options.get('verbose') or 0)
        if self._order < 1:
            raise InputError("order must be >= 1, got %d" % self._order)
        if self._e < 1:
            raise InputError("Frobenius power e must be >= 1, got %d" % self._e)
        if self._depth < 1:
            raise InputError("core chain depth must be >= 1, got %d" % self._depth)

    def _option(self, options:dict, key:str):
        value = options.get(key)
        return self.sample_options[key] if value is None else value

    def compute(self, inp:VarietyInput):
        raise NotImplementedError("Tasks must implement compute().")

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        raise NotImplementedError("Tasks must implement verdict_from_evidence().")

    def verify(self, inp:VarietyInput, evidence:dict):
        """Independent cross-checks. The default has none."""
        return None

    def caveats(self, inp:VarietyInput):
        out = [BASE_FIELD_CAVEAT]
        if self.needs_domain:
            out.append(IRREDUCIBLE_CAVEAT)
        if inp.point is not None and any(str(a) != "0" for a in inp.point):
            out.append("analysed at the point (%s), translated to the origin" % ", ".join(inp.point))
        return out

    def run(self, inp:VarietyInput):
        log("%s: starting on %s" % (self.name, inp.path or "<text>"), self._verbose)
        tic = timer()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            evidence, dim, order = self.compute(inp)
            evidence = _jsonable(evidence)
            if self._verify:
                self.verify(inp, evidence)
        toc = timer()
        caveats = self.caveats(inp)
        for w in caught:
            msg = str(w.message)
            if msg not in caveats:
                caveats.append(msg)
        verdict = self.verdict_from_evidence(evidence)
        ms = int(round((toc - tic)*1000)) if self._timing else 0
        log("%s: %s in %.3f s" % (self.name, verdict, toc - tic), self._verbose)
        return Report(self.name, inp.input_hash, inp.characteristic, dim, order, evidence, verdict, caveats, ms)


def parse_multiplier(ctx:PolyContext, text):
    if text is None:
        return None
    return ctx.parse(str(text))


def monomial_label(ctx:PolyContext, exponents):
    return ctx.format(ctx.monomial(exponents))
