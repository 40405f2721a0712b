"""Load, validate and execute JSON scenario files.

Loading checks the document against ``scenario.schema.json`` and then
resolves every name and dimension without building any matrix, so a bad
file is rejected up front with a location. Execution builds objects on
demand and isolates failures per item: a projector that fails validation
turns into an error result (and errors in the items that use it) while
everything else still runs.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .. import numeric
from ..errors import QHLError
from ..formula import ParseError, atoms, parse, parse_argument, quantum_eval, render, truth_table
from ..framework import Argument, assess
from ..histories import (
    CONSISTENCY_TOL,
    HistoryFamily,
    decoherence_functional,
    is_consistent,
    off_diagonal_magnitude,
    probabilities,
)
from ..subspace import Projector, SpinAxis, complement, projector_from_state, spin_projector
from .demos import ghz_state
from .report import Report

_NAMED_UNITARIES = {
    "hadamard": numeric.HADAMARD,
    "sigma_x": numeric.SIGMA_X,
    "sigma_y": numeric.SIGMA_Y,
    "sigma_z": numeric.SIGMA_Z,
}


class ScenarioError(QHLError, ValueError):
    """A scenario file that cannot be parsed or fails validation."""

    def __init__(self, message: str, path=(), line: int | None = None,
                 column: int | None = None):
        self.message = message
        self.path = tuple(path)
        self.line = line
        self.column = column
        super().__init__(f"{self.location()}: {message}" if self.location() else message)

    def location(self) -> str:
        parts = []
        if self.line is not None:
            parts.append(f"line {self.line}" + (f", column {self.column}" if self.column else ""))
        if self.path:
            parts.append("/" + "/".join(str(p) for p in self.path))
        return " ".join(parts)


def _schema() -> dict:
    text = resources.files(__package__).joinpath("scenario.schema.json").read_text("utf-8")
    return json.loads(text)


def _line_of(text: str | None, path) -> int | None:
    """Best-effort line number of a JSON path: find each key in turn."""
    if not text or not path:
        return None
    pos = 0
    for key in path:
        if isinstance(key, int):
            continue
        found = text.find(json.dumps(key), pos)
        if found < 0:
            break
        pos = found
    return text.count("\n", 0, pos) + 1


def _complex(value) -> complex:
    if isinstance(value, list):
        return complex(value[0], value[1])
    return complex(value)


def _matrix(rows) -> np.ndarray:
    return np.array([[_complex(v) for v in row] for row in rows], dtype=complex)


class Scenario:
    """A validated scenario document."""

    def __init__(self, doc: dict, text: str | None = None):
        self.doc = doc
        self.text = text
        self.name = doc["name"]
        self.states = doc.get("states", {})
        self.projectors = doc.get("projectors", {})
        self.formulas = doc.get("formulas", {})
        self.arguments = doc.get("arguments", {})
        self.histories = doc.get("histories", {})
        self.spaces = doc.get("spaces", {})
        self._state_dims: dict[str, int] = {}
        self._proj_dims: dict[str, int] = {}
        self._parsed: dict = {}
        self._cache: dict = {}
        self._validate()

    @classmethod
    def from_text(cls, text: str) -> "Scenario":
        if not text.strip():
            raise ScenarioError("scenario file is empty")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioError(e.msg, line=e.lineno, column=e.colno) from None
        return cls.from_dict(doc, text)

    @classmethod
    def from_dict(cls, doc, text: str | None = None) -> "Scenario":
        validator = jsonschema.Draft202012Validator(_schema())
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
        if errors:
            e = errors[0]
            path = tuple(e.absolute_path)
            raise ScenarioError(e.message, path, line=_line_of(text, path))
        return cls(doc, text)

    @classmethod
    def load(cls, path) -> "Scenario":
        return cls.from_text(Path(path).read_text("utf-8"))

    def error(self, message, *path) -> ScenarioError:
        return ScenarioError(message, path, line=_line_of(self.text, path))

    # --- static validation --------------------------------------------

    def _validate(self):
        if not any((self.projectors, self.formulas, self.arguments, self.histories)):
            raise self.error("scenario declares no projectors, formulas, arguments or histories")
        for name in self.states:
            self._state_dim(name, ())
        for name in self.projectors:
            self._proj_dim(name, ())
        for name, spec in self.formulas.items():
            try:
                f = parse(spec["text"])
            except ParseError as e:
                raise self.error(str(e), "formulas", name, "text") from None
            self._parsed["formula", name] = f
            if "bind" in spec:
                self._check_binding(atoms(f), spec["bind"], ("formulas", name, "bind"))
        for name, spec in self.arguments.items():
            try:
                premises, conclusion = parse_argument(spec["argument"])
            except ParseError as e:
                raise self.error(str(e), "arguments", name, "argument") from None
            self._parsed["argument", name] = (premises, conclusion)
            names = {n for f in (*premises, conclusion) for n in atoms(f)}
            self._check_binding(names, spec["bind"], ("arguments", name, "bind"))
        for name, spec in self.histories.items():
            self._check_history(name, spec)

    def _dim_value(self, value, path) -> int:
        if isinstance(value, int):
            return value
        if value not in self.spaces:
            raise self.error(f"unknown space {value!r}", *path)
        return self.spaces[value]

    def _state_dim(self, name, visiting, path=("states",)) -> int:
        if name in self._state_dims:
            return self._state_dims[name]
        if name not in self.states:
            raise self.error(f"unknown state {name!r}", *path)
        if name in visiting:
            raise self.error(f"state {name!r} is defined in terms of itself", "states", name)
        (kind, value), = self.states[name].items()
        here = ("states", name, kind)
        if kind == "amplitudes":
            d = len(value)
        elif kind in ("spin_plus", "spin_minus"):
            d = 2
        elif kind == "ghz":
            d = 2**value
        else:
            d = 1
            for part in value:
                d *= self._state_dim(part, (*visiting, name), here)
        if d > numeric.MAX_AXIS:
            raise self.error(f"dimension {d} exceeds the cap of {numeric.MAX_AXIS}", *here)
        self._state_dims[name] = d
        return d

    def _proj_dim(self, name, visiting, path=("projectors",)) -> int:
        if name in self._proj_dims:
            return self._proj_dims[name]
        if name not in self.projectors:
            raise self.error(f"unknown projector {name!r}", *path)
        if name in visiting:
            raise self.error(f"projector {name!r} is defined in terms of itself", "projectors", name)
        (kind, value), = self.projectors[name].items()
        here = ("projectors", name, kind)
        if kind == "matrix":
            d = len(value)
            if any(len(row) != d for row in value):
                raise self.error("matrix must be square", *here)
        elif kind == "from_state":
            d = self._state_dim(value, (), here)
        elif kind == "spin_projector":
            d = 2
        elif kind == "complement":
            d = self._proj_dim(value, (*visiting, name), here)
        elif kind in ("identity", "zero"):
            d = self._dim_value(value, here)
        else:
            d = 1
            for part in value:
                d *= self._proj_dim(part, (*visiting, name), here)
        if d > numeric.MAX_AXIS:
            raise self.error(f"dimension {d} exceeds the cap of {numeric.MAX_AXIS}", *here)
        self._proj_dims[name] = d
        return d

    def _check_binding(self, names, bind, path):
        for atom in sorted(names):
            if atom not in bind:
                raise self.error(f"atom {atom!r} is not bound", *path)
        dims = {}
        for atom, ref in bind.items():
            dims[atom] = self._proj_dim(ref, (), (*path, atom))
        if len(set(dims.values())) > 1:
            raise self.error(f"bound projectors have differing dimensions {dims}", *path)

    def _unitary_dim(self, spec, d, path) -> int | None:
        if spec == "identity":
            return d
        if isinstance(spec, str):
            return 2
        if isinstance(spec, dict):
            out = 1
            for part in spec["tensor"]:
                out *= self._unitary_dim(part, 2, path)
            return out
        if any(len(row) != len(spec) for row in spec):
            raise self.error("unitary matrix must be square", *path)
        return len(spec)

    def _check_history(self, name, spec):
        here = ("histories", name)
        initial = spec["initial"]
        if isinstance(initial, str):
            if initial in self.states:
                d = self._state_dim(initial, (), (*here, "initial"))
            elif initial in self.projectors:
                d = self._proj_dim(initial, (), (*here, "initial"))
            else:
                raise self.error(f"unknown state or projector {initial!r}", *here, "initial")
        else:
            d = len(initial["density"])
        for t, step in enumerate(spec["steps"]):
            step_path = (*here, "steps", t)
            for ev in step["events"]:
                ed = self._proj_dim(ev, (), (*step_path, "events"))
                if ed != d:
                    raise self.error(f"event {ev!r} has dimension {ed}, expected {d}",
                                     *step_path, "events")
            if "unitary" in step:
                ud = self._unitary_dim(step["unitary"], d, (*step_path, "unitary"))
                if ud != d:
                    raise self.error(f"unitary has dimension {ud}, expected {d}",
                                     *step_path, "unitary")

    # --- construction -------------------------------------------------

    def _memo(self, key, build):
        if key not in self._cache:
            try:
                self._cache[key] = (build(), None)
            except (QHLError, ValueError, ArithmeticError) as e:
                self._cache[key] = (None, e)
        value, err = self._cache[key]
        if err is not None:
            raise err
        return value

    def state(self, name) -> np.ndarray:
        def build():
            (kind, value), = self.states[name].items()
            if kind == "amplitudes":
                return numeric.normalize([_complex(v) for v in value])
            if kind in ("spin_plus", "spin_minus"):
                sign = 1 if kind == "spin_plus" else -1
                axis = value if isinstance(value, str) else SpinAxis.of(*value)
                return spin_projector(axis, sign).range_basis()[:, 0]
            if kind == "ghz":
                return ghz_state(value)
            out = self.state(value[0])
            for part in value[1:]:
                out = np.kron(out, self.state(part))
            return out
        return self._memo(("state", name), build)

    def projector(self, name) -> Projector:
        def build():
            (kind, value), = self.projectors[name].items()
            if kind == "matrix":
                return Projector(_matrix(value))
            if kind == "from_state":
                return projector_from_state(self.state(value))
            if kind == "spin_projector":
                axis = value["axis"]
                axis = axis if isinstance(axis, str) else SpinAxis.of(*axis)
                return spin_projector(axis, value.get("sign", 1))
            if kind == "complement":
                return complement(self.projector(value))
            if kind == "identity":
                return Projector.identity(self._proj_dims[name])
            if kind == "zero":
                return Projector.zero(self._proj_dims[name])
            return Projector(numeric.tensor(*(self.projector(p).matrix for p in value)))
        return self._memo(("projector", name), build)

    def _unitary(self, spec, d) -> np.ndarray:
        if spec == "identity":
            return numeric.identity(d)
        if isinstance(spec, str):
            return _NAMED_UNITARIES[spec]
        if isinstance(spec, dict):
            return numeric.tensor(*(self._unitary(p, 2) for p in spec["tensor"]))
        return _matrix(spec)

    def family(self, name) -> HistoryFamily:
        def build():
            spec = self.histories[name]
            initial = spec["initial"]
            if isinstance(initial, dict):
                rho = _matrix(initial["density"])
            elif initial in self.states:
                rho = projector_from_state(self.state(initial)).matrix
            else:
                p = self.projector(initial)
                rho = p.matrix / p.rank if p.rank else p.matrix
            d = rho.shape[0]
            events = [[self.projector(e) for e in step["events"]] for step in spec["steps"]]
            unitaries = [self._unitary(step.get("unitary", "identity"), d)
                         for step in spec["steps"]]
            return HistoryFamily(rho, events, unitaries)
        return self._memo(("family", name), build)

    # --- execution ----------------------------------------------------

    def run(self, tol: float | None = None) -> Report:
        tol = tol if tol is not None else self.doc.get("tolerance", numeric.get_tolerance())
        with numeric.tolerance(tol):
            self._cache.clear()
            report = Report(self.name, tol)
            for name in self.projectors:
                self._item(report, name, "projector", self._run_projector)
            for name in self.formulas:
                self._item(report, name, "formula", self._run_formula)
            for name in self.arguments:
                self._item(report, name, "argument", self._run_argument)
            for name in self.histories:
                self._item(report, name, "histories", self._run_history)
        return report

    def _item(self, report, name, kind, fn):
        try:
            outcome, data = fn(name)
        except (QHLError, ValueError, ArithmeticError) as e:
            report.add(name, kind, "error", error=str(e), error_type=type(e).__name__)
        else:
            report.add(name, kind, outcome, **data)

    def _run_projector(self, name):
        p = self.projector(name)
        return "ok", {"dim": p.dim, "rank": p.rank}

    def _run_formula(self, name):
        f = self._parsed["formula", name]
        data = {"formula": render(f), "atoms": atoms(f)}
        rows = truth_table(f)
        true_rows = sum(v for _, v in rows)
        data["classical"] = (
            "tautology" if true_rows == len(rows)
            else "contradiction" if true_rows == 0 else "contingent"
        )
        bind = self.formulas[name].get("bind")
        if bind is not None:
            p = quantum_eval(f, {a: self.projector(ref) for a, ref in bind.items()})
            data.update(dim=p.dim, rank=p.rank)
        return "ok", data

    def _run_argument(self, name):
        premises, conclusion = self._parsed["argument", name]
        spec = self.arguments[name]
        binding = {a: self.projector(ref) for a, ref in spec["bind"].items()}
        verdict = assess(Argument(tuple(premises), conclusion, binding))
        text = "; ".join(render(p) for p in premises) + " |- " + render(conclusion)
        return verdict.kind, {"argument": text.strip(), **verdict.to_dict()}

    def _run_history(self, name):
        spec = self.histories[name]
        fam = self.family(name)
        dm = decoherence_functional(fam)
        condition = spec.get("condition", "medium")
        check_tol = spec.get("tolerance", CONSISTENCY_TOL)
        check = is_consistent(dm, check_tol, condition)
        data = {
            "condition": condition,
            "histories": [list(h) for h in dm.histories],
            "weights": [float(x) for x in np.diag(dm.matrix).real],
            "max_off_diagonal": off_diagonal_magnitude(dm, condition),
        }
        if check:
            data["probabilities"] = probabilities(dm, check_tol, condition)
            return "consistent", data
        return "inconsistent", data


def load_scenario(path) -> Scenario:
    return Scenario.load(path)


def run_scenario(path, tol: float | None = None) -> Report:
    return Scenario.load(path).run(tol)


def fixture_path(name: str):
    """Path of a shipped fixture, e.g. ``fixture_path("ghz")``."""
    return resources.files(__package__).joinpath("fixtures", f"{name}.json")
