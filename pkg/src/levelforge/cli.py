"""Batch entry point: prepare, train, generate, blend, eval, render, serve.

Every flag can also come from a JSON config file (``--config``); explicit
command-line flags win. ``LEVELFORGE_LOG`` sets the log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .blend import blend_pair, random_generate
from .corpus import parse_level, pad_loz_room, segment_lr_level, split_dataset
from .embedding import load_table, one_hot_table, synth_table
from .errors import LevelForgeError, NonFiniteLoss
from .io import load_archive, load_manifest, save_archive, save_manifest
from .metrics import DEFAULT_SETS, METRIC_NAMES, MetricTileSets, aggregate, e_distance, metric_vector
from .nn import (
    NetworkSpec,
    RECON_CROSS_ENTROPY,
    TrainConfig,
    default_cnn_spec,
    default_fc_spec,
    load_checkpoint,
    save_checkpoint,
    train,
)
from .playability import playability_report
from .render import RENDER_IMAGE, RENDER_TEXT, render_image, render_text
from .rng import derive_seed
from .tiles import default_tile_config, load_tile_config

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

LR_SHAPE = (22, 32)
LOZ_SHAPE = (11, 16)


def _fail(code: int, error: str, detail: str):
    print(json.dumps({"error": error, "detail": detail}), file=sys.stderr)
    raise SystemExit(code)


def _tile_config(args):
    return load_tile_config(args.mapping) if getattr(args, "mapping", None) else default_tile_config()


def _load_table_arg(args, config):
    if args.table == "one-hot":
        tiles = [config.tile(c) for c in config.alphabet]
        return one_hot_table(tiles, colors=config.colors)
    if args.table.startswith("synth:"):
        dim = int(args.table.split(":", 1)[1])
        tiles = [config.tile(c) for c in config.alphabet]
        return synth_table(tiles, dim=dim, seed=derive_seed(args.seed, "synth-table"),
                           colors=config.colors)
    return load_table(args.table)


def cmd_prepare(args):
    config = _tile_config(args)
    corpus = Path(args.corpus)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    segments = []
    found = False
    for game, kind in (("LR", "level"), ("LOZ", "room")):
        game_dir = corpus / game
        if not game_dir.is_dir():
            continue
        for index, path in enumerate(sorted(game_dir.glob("*.txt"))):
            found = True
            try:
                grid = parse_level(path.read_text(encoding="utf-8"), game, config)
            except LevelForgeError as exc:
                _fail(EXIT_INPUT, type(exc).__name__, f"{path}: {exc}")
            if game == "LR":
                segments.extend(segment_lr_level(grid, index))
            else:
                segments.append(pad_loz_room(grid, index))
    if not found:
        _fail(EXIT_INPUT, "EmptyInput", f"no LR/*.txt or LOZ/*.txt under {corpus}")
    split = split_dataset(segments, ratios=tuple(args.ratios), seed=args.seed)
    save_archive(split, out / "segments.json")
    counts = {}
    for seg in segments:
        counts[seg.provenance.game] = counts.get(seg.provenance.game, 0) + 1
    print(json.dumps({"segments": len(segments), "games": counts,
                      "sizes": [len(split.train), len(split.test), len(split.validation)],
                      "archive": str(out / "segments.json")}, sort_keys=True))
    return EXIT_OK


def _spec_from_args(args, dim: int) -> NetworkSpec:
    activation = "softmax" if args.recon_loss == RECON_CROSS_ENTROPY else "linear"
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            data = json.load(fh)
        data.setdefault("dim", dim)
        data.setdefault("output_activation", activation)
        return NetworkSpec.from_json({**default_fc_spec(dim).to_json(), **data})
    if args.variant == "CNN":
        return default_cnn_spec(dim, activation)
    return default_fc_spec(dim, activation)


def cmd_train(args):
    config = _tile_config(args)
    table = _load_table_arg(args, config)
    split = load_archive(args.archive, config)
    spec = _spec_from_args(args, table.dim)
    if spec.dim != table.dim:
        _fail(EXIT_INPUT, "DimensionMismatch",
              f"spec dim {spec.dim} != table dim {table.dim}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    train_config = TrainConfig(
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        cycle_length=args.cycle_length,
        beta_max=args.beta_max,
        beta_step=args.beta_step,
        recon_scale=args.recon_scale,
        recon_loss=args.recon_loss,
        batch_size=args.batch_size,
        seed=args.seed,
        checkpoint_interval=args.checkpoint_interval,
    )
    from .nn.vae import build_model
    model = build_model(spec, seed=derive_seed(args.seed, "model"))
    log = logging.getLogger("levelforge.train")
    every = max(1, args.epochs // 20)

    def progress(record):
        if record.epoch % every == 0 or record.epoch == args.epochs - 1:
            log.info("epoch %d: recon=%.5f kl=%.5f beta=%.4f total=%.5f",
                     record.epoch, record.recon, record.kl, record.beta, record.total)

    try:
        model, history = train(model, split, table, train_config,
                               checkpoint_dir=out, progress=progress)
    except NonFiniteLoss as exc:
        _fail(EXIT_NUMERIC, "NonFiniteLoss", str(exc))
    except LevelForgeError as exc:
        _fail(EXIT_INPUT, type(exc).__name__, str(exc))
    (out / "checkpoint.json").write_bytes(save_checkpoint(model))
    (out / "history.csv").write_text("\n".join(history.csv_lines()) + "\n", encoding="utf-8")
    print(json.dumps({"checkpoint": str(out / "checkpoint.json"),
                      "history": str(out / "history.csv"),
                      "epochs": len(history)}, sort_keys=True))
    return EXIT_OK


def _render_entries(entries, table, out: Path, mode: str, scale: int):
    renders = out / "renders"
    renders.mkdir(parents=True, exist_ok=True)
    for eid, _, seg in entries:
        if mode == RENDER_TEXT:
            (renders / f"{eid}.txt").write_text(render_text(seg) + "\n", encoding="utf-8")
        else:
            render_image(seg, table, scale).save(renders / f"{eid}.png")


def cmd_generate(args):
    config = _tile_config(args)
    table = _load_table_arg(args, config)
    model = load_checkpoint(Path(args.checkpoint).read_bytes())
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.Generator(np.random.PCG64(derive_seed(args.seed, "generate")))
    segments = random_generate(model, table, args.n, rng)
    entries = [(f"GEN-{i:04d}", "random", seg) for i, seg in enumerate(segments)]
    save_manifest(entries, args.seed, "generate", out / "manifest.json")
    if args.render:
        _render_entries(entries, table, out, args.render, args.scale)
    print(json.dumps({"manifest": str(out / "manifest.json"), "n": len(entries)}, sort_keys=True))
    return EXIT_OK


def cmd_blend(args):
    config = _tile_config(args)
    table = _load_table_arg(args, config)
    model = load_checkpoint(Path(args.checkpoint).read_bytes())
    split = load_archive(args.archive, config)
    by_id = {seg.id: seg for seg in split.all_segments}
    missing = [sid for sid in (args.a, args.b) if sid not in by_id]
    if missing:
        _fail(EXIT_INPUT, "UnknownSegment", f"ids not in archive: {missing}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    result = blend_pair(model, table, by_id[args.a], by_id[args.b], steps=args.steps)
    entries = [(f"BLEND-{i:04d}", step.t, step.segment) for i, step in enumerate(result.steps)]
    save_manifest(entries, args.seed, "blend", out / "manifest.json")
    if args.render:
        _render_entries(entries, table, out, args.render, args.scale)
    print(json.dumps({"manifest": str(out / "manifest.json"), "steps": len(entries)},
                     sort_keys=True))
    return EXIT_OK


def cmd_eval(args):
    config = _tile_config(args)
    sets = MetricTileSets.from_json_file(args.sets) if args.sets else DEFAULT_SETS
    split = load_archive(args.archive, config)
    train_vectors = [metric_vector(seg, sets) for seg in split.train]
    if args.manifest:
        _, _, entries = load_manifest(args.manifest, config)
        targets = [(eid, seg) for eid, _, seg in entries]
    else:
        targets = [(seg.id, seg) for seg in split.train]
    if not targets:
        _fail(EXIT_INPUT, "EmptyInput", "nothing to evaluate")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    vectors = [metric_vector(seg, sets) for _, seg in targets]
    csv_lines = ["id," + ",".join(METRIC_NAMES)]
    for (eid, _), vec in zip(targets, vectors):
        arr = vec.as_array()
        csv_lines.append(eid + "," + ",".join(repr(float(v)) for v in arr))
    (out / "metrics.csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
    report = playability_report([seg for _, seg in targets], config)
    payload = {
        "metrics": aggregate(vectors),
        "e_distance": e_distance(vectors, train_vectors),
        "playability": report.to_json(),
        "seed": args.seed,
    }
    (out / "report.json").write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n",
                                     encoding="utf-8")
    print(json.dumps({"report": str(out / "report.json"),
                      "e_distance": payload["e_distance"],
                      "lr_astar_pct": report.lr_astar_pct,
                      "loz_astar_pct": report.loz_astar_pct}, sort_keys=True))
    return EXIT_OK


def cmd_render(args):
    config = _tile_config(args)
    table = _load_table_arg(args, config)
    if args.manifest:
        _, _, entries = load_manifest(args.manifest, config)
    else:
        split = load_archive(args.archive, config)
        entries = [(seg.id, None, seg) for seg in split.all_segments]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _render_entries(entries, table, out, args.mode, args.scale)
    print(json.dumps({"rendered": len(entries), "out": str(out / "renders")}, sort_keys=True))
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    config = _tile_config(args)
    table = _load_table_arg(args, config)
    model = load_checkpoint(Path(args.checkpoint).read_bytes())
    split = load_archive(args.archive, config)
    app = create_app(model, table, split, config, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _add_common(p, table=True):
    p.add_argument("--config", help="JSON file of defaults for this subcommand's flags")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mapping", help="tile mapping/origin config JSON (default: built-in)")
    if table:
        p.add_argument("--table", default="one-hot",
                       help="embedding table: path, 'one-hot', or 'synth:<dim>'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levelforge",
                                     description="Blend tile levels with VAEs over tile embeddings")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="parse levels, cut segments, split")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ratios", type=float, nargs=3, default=(0.85, 0.10, 0.05))
    _add_common(p, table=False)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("train", help="train a VAE on a segment archive")
    p.add_argument("--archive", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--variant", choices=("FC", "CNN"), default="FC")
    p.add_argument("--spec", help="JSON file overriding NetworkSpec fields")
    p.add_argument("--epochs", type=int, default=4000)
    p.add_argument("--learning-rate", type=float, default=1e-5)
    p.add_argument("--cycle-length", type=int, default=200)
    p.add_argument("--beta-max", type=float, default=0.01)
    p.add_argument("--beta-step", type=float, default=0.0001)
    p.add_argument("--recon-scale", type=float, default=4.0)
    p.add_argument("--recon-loss", choices=("MSE", "CrossEntropy"), default="MSE")
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--checkpoint-interval", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("generate", help="decode random latent samples")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--render", choices=(RENDER_TEXT, RENDER_IMAGE))
    p.add_argument("--scale", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("blend", help="interpolate between two archive segments")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--archive", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--a", required=True, help="segment id of endpoint A")
    p.add_argument("--b", required=True, help="segment id of endpoint B")
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--render", choices=(RENDER_TEXT, RENDER_IMAGE))
    p.add_argument("--scale", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=cmd_blend)

    p = sub.add_parser("eval", help="metrics, e-distance, playability report")
    p.add_argument("--archive", required=True, help="training archive (reference distribution)")
    p.add_argument("--manifest", help="generated manifest to evaluate (default: training set)")
    p.add_argument("--sets", help="metric tile sets JSON")
    p.add_argument("--out", required=True)
    _add_common(p, table=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("render", help="render archive or manifest segments")
    p.add_argument("--archive")
    p.add_argument("--manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=(RENDER_TEXT, RENDER_IMAGE), default=RENDER_TEXT)
    p.add_argument("--scale", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the blend explorer HTTP service")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--archive", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=7878)
    p.add_argument("--ui", help="directory of built UI assets to serve at /")
    _add_common(p)
    p.set_defaults(func=cmd_serve)
    return parser


def _apply_config_file(parser, argv):
    """Pre-scan for --config and install its values as subparser defaults."""
    argv = list(sys.argv[1:] if argv is None else argv)
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
    if path is None:
        return argv
    try:
        with open(path, encoding="utf-8") as fh:
            values = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_INPUT, "BadConfig", f"{path}: {exc}")
    if not isinstance(values, dict):
        _fail(EXIT_INPUT, "BadConfig", f"{path}: expected a JSON object")
    for subparser in parser._subparsers._group_actions[0].choices.values():
        known = {a.dest for a in subparser._actions}
        subparser.set_defaults(**{k: v for k, v in values.items() if k in known})
        for action in subparser._actions:
            if action.dest in values:
                action.required = False
    return argv


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("LEVELFORGE_LOG", "WARNING").upper())
    parser = build_parser()
    argv = _apply_config_file(parser, argv)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except NonFiniteLoss as exc:
        _fail(EXIT_NUMERIC, "NonFiniteLoss", str(exc))
    except LevelForgeError as exc:
        _fail(EXIT_INPUT, type(exc).__name__, str(exc))
    except FileNotFoundError as exc:
        _fail(EXIT_INPUT, "FileNotFound", str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
