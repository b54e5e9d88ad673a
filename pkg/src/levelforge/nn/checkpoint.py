"""Checkpoint serialization: JSON container with base64 little-endian arrays."""

from __future__ import annotations

import base64
import binascii
import json

import numpy as np

from ..errors import CorruptPayload, VersionMismatch
from .spec import NetworkSpec
from .vae import VaeModel, build_model

FORMAT_VERSION = 1
_DTYPES = {"f32": np.dtype("<f4"), "f64": np.dtype("<f8")}


def _dtype_tag(dtype) -> str:
    return "f64" if np.dtype(dtype) == np.float64 else "f32"


def save_checkpoint(model: VaeModel) -> bytes:
    arrays = {}
    for name, arr in {**model.named_params(), **model.named_state()}.items():
        tag = _dtype_tag(arr.dtype)
        little = np.ascontiguousarray(arr, dtype=_DTYPES[tag])
        arrays[name] = {
            "shape": list(arr.shape),
            "dtype": tag,
            "data": base64.b64encode(little.tobytes()).decode("ascii"),
        }
    payload = {
        "format_version": FORMAT_VERSION,
        "spec": model.spec.to_json(),
        "arrays": arrays,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


def load_checkpoint(blob: bytes, expected_spec: NetworkSpec | None = None) -> VaeModel:
    try:
        payload = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptPayload(f"unreadable checkpoint: {exc}") from None
    if not isinstance(payload, dict) or "format_version" not in payload:
        raise CorruptPayload("checkpoint missing format_version")
    if payload["format_version"] != FORMAT_VERSION:
        raise VersionMismatch(f"checkpoint format {payload['format_version']}, expected {FORMAT_VERSION}")
    if "spec" not in payload or "arrays" not in payload:
        raise CorruptPayload("checkpoint missing spec or arrays")
    spec = NetworkSpec.from_json(payload["spec"])
    if expected_spec is not None and spec != expected_spec:
        raise VersionMismatch("checkpoint spec does not match the expected spec")

    first = next(iter(payload["arrays"].values()), None)
    dtype = _DTYPES[first["dtype"]] if first else np.float32
    model = build_model(spec, seed=0, dtype=np.dtype(dtype).type)
    expected = {**model.named_params(), **model.named_state()}
    if set(expected) != set(payload["arrays"]):
        missing = sorted(set(expected) ^ set(payload["arrays"]))
        raise CorruptPayload(f"array names do not match spec: {missing[:4]}")
    for name, entry in payload["arrays"].items():
        if entry.get("dtype") not in _DTYPES:
            raise CorruptPayload(f"array {name} has unknown dtype {entry.get('dtype')!r}")
        try:
            raw = base64.b64decode(entry["data"], validate=True)
        except (binascii.Error, TypeError) as exc:
            raise CorruptPayload(f"array {name}: bad base64 ({exc})") from None
        arr = np.frombuffer(raw, dtype=_DTYPES[entry["dtype"]])
        shape = tuple(entry["shape"])
        if arr.size != int(np.prod(shape)):
            raise CorruptPayload(f"array {name}: payload size {arr.size} != shape {shape}")
        target = expected[name]
        if shape != target.shape:
            raise VersionMismatch(f"array {name}: shape {shape} != spec shape {target.shape}")
        model.set_param(name, arr.reshape(shape).copy())
    return model
