"""JSON document format and the workspace that resolves cross-references.

Every document is an object ``{"kind": ..., "name": ..., ...}``.  A file may
hold one document, a list of them, or ``{"documents": [...]}``.  Morphisms,
objects, types and other documents are referenced by name; functions and
relations are arrays of 2-element arrays.

Documents are resolved lazily, so a file may refer to names defined later or
in another file of the same workspace.
"""
import json
from pathlib import Path

from . import config
from .assemblies import (AsmFragment, Assembly, canonical_assembly, delta_t, gamma_t,
                         model_over_fragment)
from .bases import Base, build_base_model, builtin_base, validated
from .errors import CatCompError, InvalidInputError, UnknownNameError
from .fincat import FinCategory, opposite
from .functors import (CatFunctor, CatSetArrow, NatTrans, SetFunctor, constant_functor,
                       hom_functor)
from .models import Model, build_partial_model, build_total_model
from .setcore import FinSet, PartialFn, TotalFn, label_key
from .simulations import (Simulation, compose_simulations, identity_simulation,
                          simulation_from_nat_trans, simulation_from_slice_arrow)

KINDS = ("category", "functor", "nat-trans", "slice-arrow", "model", "simulation",
         "base", "assembly", "asm-fragment")

BUILTIN_BASES = {"I": "identities", "identities": "identities", "Iso": "isos",
                 "isos": "isos", "Bmono": "all_monos", "all_monos": "all_monos"}


class DocumentError(InvalidInputError):
    """A malformed document; the message carries its location."""


def _finset(elements, where):
    if not isinstance(elements, list):
        raise DocumentError(f"{where}: expected a list of labels")
    config.check_set_size(len(elements), where)
    return FinSet(elements)


def _pairs(raw, where):
    if not isinstance(raw, list) or not all(isinstance(p, list) and len(p) == 2 for p in raw):
        raise DocumentError(f"{where}: expected an array of 2-element arrays")
    return [tuple(p) for p in raw]


def _graph(raw, where):
    pairs = _pairs(raw, where)
    table = dict(pairs)
    if len(table) != len(pairs):
        raise DocumentError(f"{where}: a label is mapped twice")
    return table


def _graph_json(fn):
    return [[x, y] for x, y in fn.graph]


def _rel_json(rel):
    return [list(p) for p in sorted(rel, key=lambda p: (label_key(p[0]), label_key(p[1])))]


# ---------------------------------------------------------------- dumping

def dump_category(c):
    return {
        "kind": "category",
        "name": c.name,
        "objects": list(c.objects),
        "morphisms": [list(m) for m in c.morphisms],
        "identities": {a: c.identities[a] for a in c.objects},
        "composition": [[g, f, h] for (g, f), h in sorted(
            c.composition.items(), key=lambda kv: (c.mor_index[kv[0][0]], c.mor_index[kv[0][1]]))],
    }


def dump_functor(s):
    return {
        "kind": "functor",
        "name": s.name,
        "category": s.source.name,
        "objects": {a: list(s.obj(a)) for a in s.source.objects},
        "morphisms": {m: _graph_json(s.mor(m)) for m in s.source.morphism_names},
    }


def dump_nat_trans(n):
    return {
        "kind": "nat-trans",
        "name": n.name,
        "src": n.src.name,
        "tgt": n.tgt.name,
        "components": {a: _graph_json(n[a]) for a in n.src.source.objects},
    }


def dump_slice_arrow(w):
    return {
        "kind": "slice-arrow",
        "name": w.name,
        "s": w.s.name,
        "t": w.t.name,
        "objects": dict(w.functor.on_objects),
        "morphisms": dict(w.functor.on_morphisms),
    }


def dump_model(m):
    maps = []
    for s in m.type_names:
        for t in m.type_names:
            for fn in m.sorted_hom(s, t):
                maps.append({"from": s, "to": t, "graph": _graph_json(fn)})
    return {
        "kind": "model",
        "name": m.name,
        "types": list(m.type_names),
        "datatypes": {t: list(m.datatype[t]) for t in m.type_names},
        "maps": maps,
        "total": m.is_total,
    }


def dump_simulation(g):
    return {
        "kind": "simulation",
        "name": g.name,
        "src": g.src.name,
        "tgt": g.tgt.name,
        "type_map": dict(g.type_map),
        "realizes": {t: _rel_json(g.realizes[t]) for t in g.src.type_names},
    }


def dump_base(b):
    return {"kind": "base", "name": b.name, "category": b.category.name, "family": b.to_json()}


def dump_assembly(a, model_name=None):
    return {
        "kind": "assembly",
        "name": a.name,
        "model": model_name,
        "type": a.type_name,
        "carrier": list(a.carrier),
        "realizes": _rel_json(a.realizes),
    }


def dump_fragment(frag):
    homs = []
    for x in frag.assemblies:
        for y in frag.assemblies:
            for fn, tracker in sorted(frag.hom(x.name, y.name).items(),
                                      key=lambda kv: kv[0].sort_key()):
                homs.append({"from": x.name, "to": y.name, "function": _graph_json(fn),
                             "tracker": _graph_json(tracker)})
    return {
        "kind": "asm-fragment",
        "name": frag.name,
        "model": frag.model.name,
        "assemblies": [dump_assembly(a, frag.model.name) for a in frag.assemblies],
        "homs": homs,
    }


def dump(obj):
    for cls, fn in ((FinCategory, dump_category), (SetFunctor, dump_functor),
                    (NatTrans, dump_nat_trans), (CatSetArrow, dump_slice_arrow),
                    (Model, dump_model), (Simulation, dump_simulation), (Base, dump_base),
                    (Assembly, dump_assembly), (AsmFragment, dump_fragment)):
        if isinstance(obj, cls):
            return fn(obj)
    raise InvalidInputError(f"cannot serialize {type(obj).__name__}")


def canonical_json(data):
    """Sorted keys, two-space indent, trailing newline: the byte-stable form."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- loading

def read_documents(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path}: cannot read ({exc})") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    if isinstance(data, dict) and "documents" in data:
        data = data["documents"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not all(isinstance(d, dict) for d in data):
        raise DocumentError(f"{path}: expected a document object or a list of them")
    return data


class Workspace:
    """Named documents of every kind, resolved on first use.

    Names are unique per kind.  ``get`` builds the object (and everything it
    refers to) and caches it; unresolved names and malformed documents raise
    errors that name the document and its source file.
    """

    def __init__(self):
        self._docs = {k: {} for k in KINDS}
        self._origin = {}
        self._cache = {}
        self._resolving = []

    @classmethod
    def load(cls, paths=(), directories=()):
        """Files from each directory (sorted by name) first, then ``paths``."""
        if isinstance(directories, (str, Path)):
            directories = [directories]
        ws = cls()
        files = []
        for d in map(Path, directories):
            if not d.is_dir():
                raise DocumentError(f"{d}: not a directory")
            files += sorted(d.glob("*.json"))
        files += [Path(p) for p in paths]
        for f in files:
            for doc in read_documents(f):
                ws.add_document(doc, source=str(f))
        return ws

    def add_document(self, doc, source="<memory>"):
        kind, name = doc.get("kind"), doc.get("name")
        if kind not in self._docs:
            raise DocumentError(f"{source}: unknown document kind {kind!r}")
        if not isinstance(name, str) or not name:
            raise DocumentError(f"{source}: {kind} document without a name")
        if name in self._docs[kind] or (kind, name) in self._cache:
            raise DocumentError(f"{source}: duplicate {kind} name {name!r}")
        self._docs[kind][name] = doc
        self._origin[(kind, name)] = source

    def put(self, kind, name, obj):
        """Register an already-built object."""
        if kind not in self._docs:
            raise InvalidInputError(f"unknown kind {kind!r}")
        if name in self._docs[kind] or (kind, name) in self._cache:
            raise InvalidInputError(f"duplicate {kind} name {name!r}")
        self._cache[(kind, name)] = obj
        self._origin[(kind, name)] = "<object>"

    def names(self, kind):
        seen = list(self._docs[kind])
        seen += [n for (k, n) in self._cache if k == kind and n not in self._docs[kind]]
        return seen

    def has(self, kind, name):
        return name in self._docs[kind] or (kind, name) in self._cache

    def document(self, kind, name):
        return self._docs[kind].get(name)

    def origin(self, kind, name):
        return self._origin.get((kind, name))

    def get(self, kind, name):
        key = (kind, name)
        if key in self._cache:
            return self._cache[key]
        if kind not in self._docs:
            raise InvalidInputError(f"unknown kind {kind!r}")
        if name not in self._docs[kind]:
            raise UnknownNameError(f"no {kind} named {name!r} in the workspace")
        if key in self._resolving:
            cycle = " -> ".join(f"{k}:{n}" for k, n in self._resolving[self._resolving.index(key):])
            raise DocumentError(f"reference cycle: {cycle} -> {kind}:{name}")
        self._resolving.append(key)
        try:
            obj = getattr(self, "_load_" + kind.replace("-", "_"))(self._docs[kind][name], name)
        except CatCompError as exc:
            if not getattr(exc, "located", False):
                exc.located = True
                exc.args = (f"{exc} [in {self._origin[key]}: {kind} {name!r}]",)
            raise
        except (KeyError, TypeError, AttributeError) as exc:
            raise DocumentError(
                f"{self._origin[key]}: malformed {kind} {name!r} ({type(exc).__name__}: {exc})"
            ) from None
        finally:
            self._resolving.pop()
        self._cache[key] = obj
        return obj

    def all(self, kind):
        return [(n, self.get(kind, n)) for n in self.names(kind)]

    # ----- per-kind loaders

    def _load_category(self, doc, name):
        comp = {}
        for entry in doc["composition"]:
            if not isinstance(entry, list) or len(entry) != 3:
                raise DocumentError(f"category {name}: composition entries are [g, f, g∘f]")
            g, f, h = entry
            comp[(g, f)] = h
        morphisms = []
        for m in doc["morphisms"]:
            if not isinstance(m, list) or len(m) != 3:
                raise DocumentError(f"category {name}: morphisms are [name, dom, cod]")
            morphisms.append(m)
        return FinCategory(doc["objects"], morphisms, doc["identities"], comp, name=name)

    def _load_functor(self, doc, name):
        if "construction" in doc:
            how = doc["construction"]
            if how == "hom":
                return hom_functor(self.get("category", doc["category"]), doc["object"], name=name)
            if how == "constant":
                return constant_functor(self.get("category", doc["category"]),
                                        _finset(doc.get("elements", ["*"]), f"functor {name}"),
                                        name=name)
            if how == "opposite-hom":
                c = opposite(self.get("category", doc["category"]))
                return hom_functor(c, doc["object"], name=name)
            raise DocumentError(f"functor {name}: unknown construction {how!r}")
        c = self.get("category", doc["category"])
        objs = {a: _finset(v, f"functor {name} at {a}") for a, v in doc["objects"].items()}
        mors = {}
        for m, raw in doc["morphisms"].items():
            if m not in c.mor_index:
                raise UnknownNameError(f"functor {name}: unknown morphism {m!r}")
            if c.dom(m) not in objs or c.cod(m) not in objs:
                raise DocumentError(f"functor {name}: no value at the ends of {m}")
            mors[m] = TotalFn(objs[c.dom(m)], objs[c.cod(m)], _graph(raw, f"functor {name} at {m}"))
        return SetFunctor(c, objs, mors, name=name)

    def _load_nat_trans(self, doc, name):
        src, tgt = self.get("functor", doc["src"]), self.get("functor", doc["tgt"])
        comps = {}
        for a, raw in doc["components"].items():
            if a not in src.on_objects:
                raise UnknownNameError(f"nat-trans {name}: unknown object {a!r}")
            comps[a] = TotalFn(src.obj(a), tgt.obj(a), _graph(raw, f"nat-trans {name} at {a}"))
        return NatTrans(src, tgt, comps, name=name)

    def _load_slice_arrow(self, doc, name):
        s, t = self.get("functor", doc["s"]), self.get("functor", doc["t"])
        f = CatFunctor(s.source, t.source, doc["objects"], doc["morphisms"], name=name)
        return CatSetArrow(f, s, t, name=name)

    def _category_and_functor(self, doc):
        s = self.get("functor", doc["functor"])
        if "category" in doc and self.get("category", doc["category"]) != s.source:
            raise InvalidInputError(f"functor {s.name} is not over category {doc['category']}")
        return s.source, s

    def _load_model(self, doc, name):
        how = doc.get("construction")
        if how is None:
            types = doc["types"]
            data = {t: _finset(doc["datatypes"][t], f"model {name} datatype {t}") for t in types}
            maps = {}
            for entry in doc["maps"]:
                s, t = entry["from"], entry["to"]
                if s not in data or t not in data:
                    raise UnknownNameError(f"model {name}: unknown type in ({s!r}, {t!r})")
                fn = PartialFn(data[s], data[t], _graph(entry["graph"], f"model {name} map {s}->{t}"))
                maps.setdefault((s, t), set()).add(fn)
            return Model(types, data, maps, name=name)
        if how in ("total", "partial"):
            c, s = self._category_and_functor(doc)
            build = build_total_model if how == "total" else build_partial_model
            return build(c, s, name=name)
        if how == "base":
            c, s = self._category_and_functor(doc)
            return build_base_model(c, s, self.resolve_base(doc["base"], c), name=name)
        if how == "over-fragment":
            return model_over_fragment(self.get("asm-fragment", doc["fragment"]), name=name)
        raise DocumentError(f"model {name}: unknown construction {how!r}")

    def resolve_base(self, ref, c):
        """A base document name, or a built-in alias (``I``, ``Iso``, ``Bmono``) over ``c``."""
        if self.has("base", ref):
            return self.get("base", ref)
        if ref in BUILTIN_BASES:
            return builtin_base(c, BUILTIN_BASES[ref])
        raise UnknownNameError(f"no base named {ref!r} and it is not a built-in alias")

    def _load_simulation(self, doc, name):
        how = doc.get("construction")
        if how is None:
            src, tgt = self.get("model", doc["src"]), self.get("model", doc["tgt"])
            rel = {t: _pairs(v, f"simulation {name} at {t}") for t, v in doc["realizes"].items()}
            return Simulation(src, tgt, doc["type_map"], rel, name=name)
        variant = doc.get("variant", "total")
        models = None
        if "src" in doc and "tgt" in doc:
            models = (self.get("model", doc["src"]), self.get("model", doc["tgt"]))
        if how == "nat-trans":
            sim = simulation_from_nat_trans(self.get("nat-trans", doc["of"]), variant, models)
        elif how == "slice-arrow":
            sim = simulation_from_slice_arrow(self.get("slice-arrow", doc["of"]), variant, models)
        elif how == "identity":
            sim = identity_simulation(self.get("model", doc["model"]))
        elif how == "compose":
            # "first" runs first: the result is second ∘ first
            sim = compose_simulations(self.get("simulation", doc["second"]),
                                      self.get("simulation", doc["first"]))
        elif how == "gamma-t":
            _, sim = gamma_t(self.get("model", doc["model"]))
        elif how == "delta-t":
            sim = delta_t(self.get("asm-fragment", doc["fragment"]))
        else:
            raise DocumentError(f"simulation {name}: unknown construction {how!r}")
        sim.name = name
        return sim

    def _load_base(self, doc, name):
        c = self.get("category", doc["category"])
        if "builtin" in doc:
            kind = BUILTIN_BASES.get(doc["builtin"])
            if kind is None:
                raise DocumentError(f"base {name}: unknown built-in {doc['builtin']!r}")
            b = builtin_base(c, kind)
            b.name = name
            return b
        b, _ = validated(Base(c, doc["family"], name=name))
        return b

    def _load_assembly(self, doc, name):
        m = self.get("model", doc["model"])
        if doc.get("canonical"):
            return canonical_assembly(m, doc["type"], name=name)
        carrier = _finset(doc["carrier"], f"assembly {name}")
        return Assembly(name, carrier, doc["type"], _pairs(doc["realizes"], f"assembly {name}"))

    def _load_asm_fragment(self, doc, name):
        m = self.get("model", doc["model"])
        members = []
        if doc.get("canonical"):
            members += [canonical_assembly(m, t) for t in m.type_names]
        for ref in doc.get("assemblies", []):
            # a name, or an inline assembly document as written by dump_fragment
            inline = ref if isinstance(ref, dict) else None
            if inline is None:
                a = self.get("assembly", ref)
                inline = self._docs["assembly"].get(ref, {})
            else:
                a = self._load_assembly({**inline, "model": doc["model"]}, inline["name"])
            if inline.get("model") not in (None, doc["model"]):
                raise InvalidInputError(f"assembly {a.name} is over a different model")
            members.append(a)
        return AsmFragment(m, members, name=name)
