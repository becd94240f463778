"""Command-line surface.

One instance file drives every command; irrelevant fields are ignored
with a warning on stderr.  Output is a certificate: prose by default,
canonical JSON behind --json.  Exit codes: 0 all checks passed, 1 a
failed check or unmet hypothesis (the offending witness is named), 2
malformed input.

``verify`` replays a saved JSON certificate from its echoed inputs and
compares the bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from itertools import islice
from typing import Any

from .bitsets import bit_list, full_mask, has_bit, mask_of
from .certificates import Certificate, Check, canonical_json
from .config import DEFAULT_BOUNDS, Bounds
from .constructions import (
    ChoiceFunction,
    fixed_point_bourbaki,
    fixed_point_moroianu,
    kanamori_construct,
    kuratowski_fixed_point,
    zermelo_well_order,
)
from .equivalence import kneser_maximal, round_trip, zorn_maximal
from .errors import (
    CarrierTooLarge,
    DomainError,
    FinordError,
    HypothesisFailed,
    InstanceError,
    NotInductive,
    NotInflationary,
    NotPrefixCompatible,
    NotReflexive,
    NotTransitive,
    NotUnionClosed,
    PhiViolation,
    TableIncomplete,
    UniquenessViolated,
)
from .instances import (
    Instance,
    instance_choice,
    instance_family,
    instance_family_map,
    instance_inflationary,
    instance_preorder,
    instance_psi,
    instance_step_rule,
    load_instance,
    parse_instance,
)
from .oracle import (
    InstanceGenerator,
    enumerate_preorders,
    enumerate_preorders_matrix,
    random_instances,
    tb_uniqueness_oracle,
)
from .order_core import maximal_elements
from .recursion import construct_tb_chain

UNMET_HYPOTHESIS = (
    HypothesisFailed,
    NotInductive,
    NotUnionClosed,
    NotInflationary,
    UniquenessViolated,
    NotPrefixCompatible,
)
MALFORMED = (
    InstanceError,
    NotReflexive,
    NotTransitive,
    TableIncomplete,
    PhiViolation,
    DomainError,
    CarrierTooLarge,
    ValueError,
)

FIELDS_USED = {
    "check": {"elements", "relation", "closure"},
    "wellorder": {"elements", "choice"},
    "fixpoint": {"elements", "relation", "closure", "f", "start", "choice"},
    "maximal": {"elements", "relation", "closure", "choice"},
    "tb": {"elements", "phi"},
    "kanamori": {"elements", "psi"},
    "kuratowski": {"elements", "family", "f"},
}


def _bounds_from(options: dict[str, Any]) -> Bounds:
    bounds = DEFAULT_BOUNDS
    if options.get("max_size"):
        bounds = bounds.with_max_size(int(options["max_size"]))
    if options.get("seed") is not None:
        bounds = replace(bounds, sample_seed=int(options["seed"]))
    return bounds


def _default_start(inst: Instance) -> int:
    if inst.start is not None:
        return inst.start
    if inst.choice is not None:
        return instance_choice(inst).choose(full_mask(inst.n))
    return 0


def _run_check(inst: Instance, options: dict[str, Any]) -> Certificate:
    P = instance_preorder(inst, force_closure=bool(options.get("closure")))
    return Certificate(
        kind="check",
        inputs={"instance": inst.echo(), "options": options},
        witness={"n": P.n, "relation_rows": list(P.up)},
        checks=[Check("reflexive", True), Check("transitive", True)],
        modes={"closure": inst.closure or bool(options.get("closure"))},
    )


def _run_wellorder(inst: Instance, options: dict[str, Any]) -> Certificate:
    c = instance_choice(inst)
    chain = zermelo_well_order(inst.n, c)
    full = full_mask(inst.n)
    stepwise = all(
        c.choose(full & ~mask_of(chain.seq[:i])) == chain[i] for i in range(len(chain))
    )
    return Certificate(
        kind="wellorder",
        inputs={"instance": inst.echo(), "options": options},
        witness={"chain": list(chain)},
        checks=[
            Check("covers-carrier", chain.bits == full),
            Check("next-equals-choice-of-complement", stepwise),
        ],
        reproducibility={"choice": c.to_payload()},
    )


def _run_fixpoint(inst: Instance, options: dict[str, Any]) -> Certificate:
    case = int(options.get("case", 2))
    P = instance_preorder(inst, force_closure=bool(options.get("closure")))
    f = instance_inflationary(inst)
    a = _default_start(inst)
    bounds = _bounds_from(options)
    if case == 1:
        c = instance_choice(inst)
        witness = fixed_point_moroianu(P, f, c, a, bounds=bounds)
    else:
        witness = fixed_point_bourbaki(P, f, a, bounds=bounds)
    report = witness.hypothesis_report
    checks = [
        Check(
            f"hypothesis-case-{report.case}",
            True,
            detail=f"{report.mode}:{report.subsets_checked} well-ordered subsets",
        )
    ] + list(witness.checks)
    return Certificate(
        kind="fixpoint",
        inputs={"instance": inst.echo(), "options": options},
        witness={"b": witness.b, "chain": list(witness.tb.chain), "f_of_b": f(witness.b)},
        checks=checks,
        modes={"fixed_point": witness.mode, "hypothesis": report.mode},
        reproducibility={"case": case, "start": a, "sample_seed": bounds.sample_seed},
    )


def _run_maximal(inst: Instance, options: dict[str, Any]) -> Certificate:
    via = options.get("via", "kneser")
    P = instance_preorder(inst, force_closure=bool(options.get("closure")))
    c = instance_choice(inst)
    bounds = _bounds_from(options)
    checks = []
    if via == "zorn":
        b = zorn_maximal(P, c, bounds=bounds)
        checks.append(Check("inductive", True))
    else:
        b = kneser_maximal(P, c, bounds=bounds)
    checks.append(Check("result-is-maximal", has_bit(maximal_elements(P), b)))
    return Certificate(
        kind="maximal",
        inputs={"instance": inst.echo(), "options": options},
        witness={"element": b, "label": P.label(b)},
        checks=checks,
        modes={"via": via},
        reproducibility={"choice": c.to_payload()},
    )


def _run_tb(inst: Instance, options: dict[str, Any]) -> Certificate:
    rule = instance_step_rule(inst)
    tb = construct_tb_chain(inst.n, rule)
    return Certificate(
        kind="tb",
        inputs={"instance": inst.echo(), "options": options},
        witness={
            "chain": list(tb.chain),
            "step_log": [[prefix, x] for prefix, x in tb.step_log],
        },
        checks=list(tb.checks),
    )


def _run_kanamori(inst: Instance, options: dict[str, Any]) -> Certificate:
    psi = instance_psi(inst)
    tb = kanamori_construct(inst.n, psi)
    value = psi(tb.chain.bits)
    position = tb.chain.seq.index(value)
    first = mask_of(tb.chain.seq[:position])
    second = tb.chain.bits
    checks = list(tb.checks) + [
        Check("pair-distinct", first != second),
        Check("pair-strict-subset", first != second and not first & ~second),
        Check("psi-agrees-on-pair", psi(first) == psi(second)),
    ]
    return Certificate(
        kind="kanamori",
        inputs={"instance": inst.echo(), "options": options},
        witness={"chain": list(tb.chain), "psi_value": value, "pair": [first, second]},
        checks=checks,
    )


def _run_kuratowski(inst: Instance, options: dict[str, Any]) -> Certificate:
    ground_size, family = instance_family(inst)
    fmap = instance_family_map(inst, len(family))
    witness = kuratowski_fixed_point(ground_size, family, fmap, bounds=_bounds_from(options))
    return Certificate(
        kind="kuratowski",
        inputs={"instance": inst.echo(), "options": options},
        witness={
            "member": witness.member,
            "index": witness.index,
            "start_index": witness.start_index,
        },
        checks=list(witness.checks),
        modes={
            "closure_check": witness.closure_mode,
            "fixed_point": witness.fixed_point.mode,
            "hypothesis": witness.fixed_point.hypothesis_report.mode,
        },
    )


def _run_equivalence(options: dict[str, Any]) -> Certificate:
    base_n = int(options.get("n", 3))
    seed = options.get("seed")
    c0 = ChoiceFunction.seeded(int(seed)) if seed is not None else ChoiceFunction.min_index()
    cert = round_trip(base_n, c0, bounds=_bounds_from(options))
    checks = [
        Check(f"{stage.name}:{check.name}", check.passed, check.detail)
        for stage in cert.stages
        for check in stage.checks
    ]
    order = cert.stages[2].outputs["order"]
    return Certificate(
        kind="equivalence",
        inputs={"instance": None, "options": options},
        witness={"well_order": order, "stages": [s.to_dict() for s in cert.stages]},
        checks=checks,
        modes={"final": cert.final},
        reproducibility=cert.reproducibility,
    )


def _run_oracle_preorders(options: dict[str, Any]) -> Certificate:
    top = int(options.get("n", 4))
    bounds = _bounds_from(options)
    counts = {}
    counts_alt = {}
    for n in range(1, top + 1):
        counts[str(n)] = sum(1 for _ in enumerate_preorders(n, bounds=bounds))
        counts_alt[str(n)] = sum(1 for _ in enumerate_preorders_matrix(n, bounds=bounds))
    agree = counts == counts_alt
    return Certificate(
        kind="oracle-preorders",
        inputs={"instance": None, "options": options},
        witness={"counts": counts, "counts_independent": counts_alt},
        checks=[Check("filters-agree", agree)],
    )


def _run_oracle_tb(options: dict[str, Any]) -> Certificate:
    n = int(options.get("n", 3))
    samples = int(options.get("samples", 100))
    seed = int(options.get("seed") or 0)
    bounds = _bounds_from(options)
    gen = InstanceGenerator.make(seed=seed, n=n)
    agreements = 0
    for rule in islice(random_instances("phispec", gen), samples):
        survivor = tb_uniqueness_oracle(n, rule, bounds=bounds)
        if survivor.seq == construct_tb_chain(n, rule).chain.seq:
            agreements += 1
    return Certificate(
        kind="oracle-tb",
        inputs={"instance": None, "options": options},
        witness={"samples": samples, "agreements": agreements},
        checks=[Check("construction-matches-unique-survivor", agreements == samples)],
        reproducibility={"seed": seed, "n": n},
    )


def run_command(kind: str, instance_doc: dict | None, options: dict[str, Any]) -> Certificate:
    """Pure dispatch: everything a certificate echoes is enough to rerun it."""
    if kind in FIELDS_USED:
        inst = parse_instance(instance_doc)
        runner = {
            "check": _run_check,
            "wellorder": _run_wellorder,
            "fixpoint": _run_fixpoint,
            "maximal": _run_maximal,
            "tb": _run_tb,
            "kanamori": _run_kanamori,
            "kuratowski": _run_kuratowski,
        }[kind]
        return runner(inst, options)
    if kind == "equivalence":
        return _run_equivalence(options)
    if kind == "oracle-preorders":
        return _run_oracle_preorders(options)
    if kind == "oracle-tb":
        return _run_oracle_tb(options)
    raise InstanceError("kind", f"unknown certificate kind {kind!r}")


def _warn_ignored(kind: str, inst: Instance) -> None:
    used = FIELDS_USED.get(kind)
    if used is None:
        return
    for name in sorted(inst.present_fields() - used):
        print(f"warning: field {name!r} ignored by command {kind!r}", file=sys.stderr)


def _subset_prose(mask: int, labels) -> str:
    return "{" + ", ".join(labels[i] for i in bit_list(mask)) + "}"


def render_prose(cert: Certificate) -> str:
    lines = [f"certificate: {cert.kind}"]
    instance = (cert.inputs or {}).get("instance")
    labels = instance["elements"] if instance else None
    if cert.witness is not None:
        lines.append("witness:")
        for key, value in cert.witness.items():
            if key == "stages":
                continue
            if labels and key in ("pair",):
                value = [_subset_prose(m, labels) for m in value]
            elif labels and key in ("member",):
                value = _subset_prose(value, labels)
            lines.append(f"  {key} = {value}")
    else:
        lines.append("witness: withheld (a check failed)")
    lines.append("checks:")
    for check in cert.checks:
        mark = "ok  " if check.passed else "FAIL"
        detail = f"  [{check.detail}]" if check.detail else ""
        lines.append(f"  {mark} {check.name}{detail}")
    if cert.modes:
        lines.append("modes: " + ", ".join(f"{k}={v}" for k, v in sorted(cert.modes.items())))
    lines.append(f"result: {'PASS' if cert.passed else 'FAIL'}")
    return "\n".join(lines)


def _verify(path: str, as_json: bool) -> int:
    try:
        with open(path) as handle:
            saved = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not isinstance(saved, dict) or "kind" not in saved or "inputs" not in saved:
        print("error: not a certificate file", file=sys.stderr)
        return 2
    kind = saved["kind"]
    inputs = saved["inputs"]
    try:
        cert = run_command(kind, inputs.get("instance"), inputs.get("options") or {})
    except UNMET_HYPOTHESIS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MALFORMED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fresh = canonical_json(cert.to_dict())
    stored = canonical_json(saved)
    identical = fresh == stored
    if as_json:
        print(canonical_json({"kind": "verify", "identical": identical, "pass": identical and cert.passed}))
    else:
        print(f"replay {'matches' if identical else 'DIFFERS FROM'} the stored certificate")
    return 0 if identical and cert.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finord",
        description="Well-ordering and fixed-point constructions on finite preorders, with certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *, file=True, help=""):
        p = sub.add_parser(name, help=help)
        if file:
            p.add_argument("file", help="instance JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-size", type=int, default=None, help="raise the exhaustive-scan caps")
        return p

    add("check", help="validate the relation as a preorder")
    p = add("wellorder", help="well-order the carrier from a choice function")
    p = add("fixpoint", help="fixed point of an inflationary map")
    p.add_argument("--case", type=int, choices=(1, 2), default=2)
    p.add_argument("--closure", action="store_true", help="close the relation first")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled hypothesis checks")
    p = add("maximal", help="maximal element via a choice function")
    p.add_argument("--via", choices=("kneser", "zorn"), default="kneser")
    p.add_argument("--closure", action="store_true")
    p = add("tb", help="run the greedy recursion for a table rule")
    p = add("kanamori", help="chain and non-injectivity pair for a powerset map")
    p = add("kuratowski", help="fixed member of an inclusion-inflationary family map")
    p = add("equivalence", file=False, help="run the four-statement round trip")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p = add("oracle", file=False, help="brute-force cross-checks")
    p.add_argument("what", choices=("preorders", "tb"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p = sub.add_parser("verify", help="replay a saved certificate byte-for-byte")
    p.add_argument("file", help="certificate JSON file")
    p.add_argument("--json", action="store_true")

    sub.add_parser("check", add_help=False)  # placeholder guard; replaced below
    return parser


def _options_from(args: argparse.Namespace) -> dict[str, Any]:
    options: dict[str, Any] = {}
    for name in ("case", "via", "n", "seed", "samples", "closure", "max_size"):
        value = getattr(args, name, None)
        if value not in (None, False):
            options[name] = value
    return options


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "verify":
        return _verify(args.file, args.json)

    kind = args.command
    if kind == "oracle":
        kind = f"oracle-{args.what}"

    options = _options_from(args)
    instance_doc = None
    if args.command in FIELDS_USED:
        try:
            instance_doc = load_instance(args.file).echo()
            _warn_ignored(args.command, parse_instance(instance_doc))
        except InstanceError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    try:
        cert = run_command(kind, instance_doc, options)
    except UNMET_HYPOTHESIS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MALFORMED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(cert.to_json() if args.json else render_prose(cert))
    return 0 if cert.passed else 1


if __name__ == "__main__":
    sys.exit(main())
