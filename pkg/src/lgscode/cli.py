"""Command-line entry point: ``lgscode <command> [options]``.

Reports are JSON (or CSV for tables); keys and ciphertexts are binary files.
Every command is deterministic given ``--seed``; without it a fresh seed is
drawn and printed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import lgs_schemes as lgs
from . import rank_linalg as rl
from . import stab_algebra as sa
from . import structural_lab as lab
from ._rand import as_rng, fresh_seed
from .attack_estimator import OMEGA, c_f
from .gabidulin import DecodeFailure

REPORT_SCHEMA = 1
EXIT_PARAM, EXIT_DECODE, EXIT_IO = 2, 3, 4


class ParamError(ValueError):
    """Invalid or inconsistent parameters."""


# -- helpers ------------------------------------------------------------------


def _seed(args) -> bytes:
    if args.seed is None:
        seed = fresh_seed()
        print(f"seed: {seed.hex()}")
        return seed
    try:
        return bytes.fromhex(args.seed)
    except ValueError as exc:
        raise ParamError(f"--seed must be hex: {exc}") from None


def _params(args, defaults: dict | None = None) -> lgs.Params:
    cfg = dict(defaults or {})
    for key, attr in (("q", "q"), ("m", "m"), ("k", "k"), ("k_prime", "kprime"), ("delta", "delta")):
        val = getattr(args, attr, None)
        if val is not None:
            cfg[key] = val
    name = getattr(args, "set", None)
    config = getattr(args, "config", None)
    try:
        if name and name not in lgs.REGISTRY:
            raise ParamError(f"unknown parameter set {name!r}")
        if config:
            cfg = {**json.loads(Path(config).read_text()), **cfg}
        params = lgs.load_params(name, cfg or None)
        params.validate()
    except ParamError:
        raise
    except (ValueError, KeyError) as exc:
        raise ParamError(str(exc)) from None
    return params


def _write_json(obj, out: str | None) -> None:
    text = json.dumps({"schema": REPORT_SCHEMA, **obj}, indent=2, default=_jsonable)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, float) and x == float("inf"):
        return None
    raise TypeError(type(x).__name__)


def _write_csv(rows: list[dict], out: str | None) -> None:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _read_vector(path: str) -> np.ndarray:
    return np.array(json.loads(Path(path).read_text()), dtype=np.int64)


# -- commands -----------------------------------------------------------------


def cmd_keygen(args) -> int:
    params = _params(args)
    seed = _seed(args)
    kp = lgs.keygen(params, seed, args.variant, filtered=not args.no_filter)
    prefix = Path(args.out or "lgs")
    pk_path, sk_path = prefix.with_suffix(".pk"), prefix.with_suffix(".sk")
    pk_path.write_bytes(lgs.serialize_public(kp.public))
    sk_path.write_bytes(lgs.serialize_secret(kp.secret))
    print(f"{args.variant} keys: {pk_path} ({pk_path.stat().st_size} B), {sk_path}; t_pub={params.t_pub}, filter retries={kp.retries}")
    return 0


def _load_pk(path: str):
    return lgs.deserialize_public(Path(path).read_bytes())


def cmd_encrypt(args) -> int:
    pk = _load_pk(args.pk)
    if not isinstance(pk, lgs.PublicKeyMcE):
        raise ParamError("encrypt needs a McEliece public key")
    seed = _seed(args)
    F = pk.field.base
    if args.plaintext:
        x = _read_vector(args.plaintext)
    else:
        x = F.random(as_rng(seed, "plaintext"), (pk.k_prime,))
        pt_path = Path(args.out).with_suffix(".pt.json")
        pt_path.write_text(json.dumps(x.tolist()) + "\n")
        print(f"plaintext: {pt_path}")
    Y = lgs.encrypt_mce(pk, x, seed)
    Path(args.out).write_bytes(lgs.serialize_ciphertext(pk.field, Y, "mce"))
    print(f"ciphertext: {args.out}")
    return 0


def cmd_decrypt(args) -> int:
    pk = _load_pk(args.pk)
    sk = lgs.deserialize_secret(Path(args.sk).read_bytes())
    variant, Y = lgs.deserialize_ciphertext(Path(args.ct).read_bytes())
    if variant != "mce" or not isinstance(pk, lgs.PublicKeyMcE):
        raise ParamError("decrypt needs a McEliece key and ciphertext")
    x = lgs.decrypt_mce(sk, pk.gens, Y)
    _emit_vector(x, args.out)
    return 0


def _emit_vector(x, out: str | None) -> None:
    text = json.dumps(np.asarray(x).tolist())
    if out:
        Path(out).write_text(text + "\n")
        print(f"plaintext: {out}")
    else:
        print(text)


def cmd_nied_encrypt(args) -> int:
    pk = _load_pk(args.pk)
    if not isinstance(pk, lgs.PublicKeyNied):
        raise ParamError("nied-encrypt needs a Niederreiter public key")
    seed = _seed(args)
    if args.plaintext:
        e = _read_vector(args.plaintext)
    else:
        e = lgs.sample_plaintext_error(pk, seed)
        pt_path = Path(args.out).with_suffix(".pt.json")
        pt_path.write_text(json.dumps(e.tolist()) + "\n")
        print(f"plaintext: {pt_path}")
    s = lgs.encrypt_nied(pk, e)
    Path(args.out).write_bytes(lgs.serialize_ciphertext(pk.field, s, "nied"))
    print(f"ciphertext: {args.out}")
    return 0


def cmd_nied_decrypt(args) -> int:
    pk = _load_pk(args.pk)
    sk = lgs.deserialize_secret(Path(args.sk).read_bytes())
    variant, s = lgs.deserialize_ciphertext(Path(args.ct).read_bytes())
    if variant != "nied" or not isinstance(pk, lgs.PublicKeyNied):
        raise ParamError("nied-decrypt needs a Niederreiter key and ciphertext")
    _emit_vector(lgs.decrypt_nied(sk, pk, s), args.out)
    return 0


def _estimate_row(params: lgs.Params, omega: float) -> dict:
    rep = c_f(params.q, params.m, params.k, params.k_prime, params.t_pub, omega=omega)
    return {"name": params.name, **params.to_dict(), "t_pub": params.t_pub, "c_f": rep.c_f, **lgs.sizes(params)}, rep


def cmd_estimate(args) -> int:
    params = _params(args)
    row, rep = _estimate_row(params, args.omega)
    if args.format == "csv":
        _write_csv([row], args.out)
    else:
        _write_json({"params": row, "report": rep.to_dict()}, args.out)
    print(f"C_f = {row['c_f']} (log2 {rep.c_f_log2:.2f}, {rep.c_f_source}); pk {row['pk_kB']:.2f} kB, ct {row['ct_bytes']} B", file=sys.stderr)
    return 0


def cmd_tables(args) -> int:
    names = [n for n in lgs.REGISTRY if args.level in ("all", n.split("-")[1])]
    if not names:
        raise ParamError(f"no parameter sets at level {args.level}")
    rows = [_estimate_row(lgs.REGISTRY[n], args.omega)[0] for n in names]
    if args.format == "csv":
        _write_csv(rows, args.out)
    else:
        _write_json({"rows": rows}, args.out)
    return 0


def _code_from_args(args):
    if args.pk:
        pk = _load_pk(args.pk)
        if not isinstance(pk, lgs.PublicKeyMcE):
            raise ParamError("stab-analyze needs a McEliece public key")
        return pk.field.base, pk.gens
    params = _params(args)
    kp = lgs.keygen(params, _seed(args), "mce", filtered=False)
    return kp.public.field.base, kp.public.gens


def cmd_stab_analyze(args) -> int:
    F, gens = _code_from_args(args)
    d = sa.dims(F, gens)
    left, right = sa.is_trivial_stab(F, gens)
    _write_json({"dims": d, "trivial": {"left": left, "right": right}}, args.out)
    return 0


def cmd_census(args) -> int:
    params = _params(args)
    seed = _seed(args)
    res = lab.stabilizer_census(
        params.q, params.m, params.n, params.k, params.k_prime, args.trials, seed, params.delta
    )
    if args.format == "csv":
        _write_csv([{"trial": i, "left": l, "right": r} for i, (l, r) in enumerate(res.per_trial)], args.out)
    else:
        _write_json({"params": params.to_dict(), "census": res.to_dict(raw=args.raw)}, args.out)
    print(f"trivial {res.trivial_count}/{res.trials}", file=sys.stderr)
    return 0


def cmd_complete_toy(args) -> int:
    defaults = {"q": 2, "m": 3, "k": 2, "k_prime": 5}
    params = _params(args, defaults)
    seed = _seed(args)
    code, B = lab.parent_code(params.q, params.m, params.n, params.k, params.delta, (seed, "parent"))
    F = code.field.base
    from .gabidulin import expanded_generator
    from .subcodes import random_subcode

    G = expanded_generator(code, B)
    km, m = params.k * params.m, params.m
    sub = random_subcode(F, G, params.k_prime, (seed, "subcode"), m)
    nf = lab.normal_form(F, sub.gen, km)
    comp = lab.complete(F, nf, lab.generator_oracle(F, G, km))
    full = lab.completion_search_toy(F, nf, lab.equality_validator(F, G))
    Gp = lab.puncture(G, m, params.k + 1)
    nfp = lab.normal_form(F, lab.puncture(sub.gen, m, params.k + 1), km)
    punct = lab.completion_search_toy(F, nfp, lab.equality_validator(F, Gp))
    _write_json(
        {
            "params": params.to_dict(),
            "completion_recovers_parent": rl.same_rowspace(F, comp.ghat, G),
            "full_search": {"visited": full.visited, "accepted": len(full.accepted)},
            "punctured_search": {"visited": punct.visited, "accepted": len(punct.accepted)},
        },
        args.out,
    )
    return 0


# -- parser -------------------------------------------------------------------


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set", help="registry name, e.g. LGS-128-a")
    p.add_argument("--config", help="JSON file with q, delta, m, k, k_prime")
    p.add_argument("--q", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--kprime", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lgscode", description="LGS rank-metric encryption toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_params(p)
    p.add_argument("--seed")
    p.add_argument("--variant", choices=("mce", "nied"), default="mce")
    p.add_argument("--no-filter", action="store_true", help="skip the stabilizer filter")
    p.add_argument("--out", help="output prefix (writes .pk and .sk)")
    p.set_defaults(func=cmd_keygen)

    for name, func, doc in (
        ("encrypt", cmd_encrypt, "McEliece encryption"),
        ("nied-encrypt", cmd_nied_encrypt, "Niederreiter encryption"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--pk", required=True)
        p.add_argument("--plaintext", help="JSON vector; random if omitted")
        p.add_argument("--seed")
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    for name, func, doc in (
        ("decrypt", cmd_decrypt, "McEliece decryption"),
        ("nied-decrypt", cmd_nied_decrypt, "Niederreiter decryption"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--pk", required=True)
        p.add_argument("--sk", required=True)
        p.add_argument("--ct", required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("estimate", help="attack complexity and sizes")
    _add_params(p)
    p.add_argument("--omega", type=float, default=OMEGA)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("tables", help="regenerate the parameter tables")
    p.add_argument("--level", choices=("128", "192", "256", "all"), default="all")
    p.add_argument("--omega", type=float, default=OMEGA)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("stab-analyze", help="stabilizer/annihilator dimensions of a public code")
    _add_params(p)
    p.add_argument("--pk", help="McEliece public key; otherwise a fresh unfiltered key")
    p.add_argument("--seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stab_analyze)

    p = sub.add_parser("census", help="stabilizer census over unfiltered random subcodes")
    _add_params(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed")
    p.add_argument("--raw", action="store_true", help="include per-trial dimensions")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("complete-toy", help="generator completion on a toy instance")
    _add_params(p)
    p.add_argument("--seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_complete_toy)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParamError as exc:
        print(f"ParamError: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (DecodeFailure, rl.NoSolutionError) as exc:
        print(f"DecodeFailure: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except OSError as exc:
        print(f"IOError: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"ParamError: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
