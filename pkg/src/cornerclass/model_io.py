"""Versioned JSON persistence for trained models.

Models are small at desk scale, so the on-disk format is a human-inspectable
JSON document with integer weights as integer literals. Loading verifies the
format version and reconstructs a model whose predictions are identical to
the original's on every input.
"""

from __future__ import annotations

import json

import numpy as np

from .cc1 import CC1Model
from .cc4 import CC4Model

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    """Corrupt, truncated, or wrong-version model file."""


def save_model(model, path, meta: dict | None = None) -> None:
    """Write a CC4 or CC1 model as versioned JSON; ``meta`` rides along
    verbatim (coder parameters, scene dimensions, ...)."""
    if isinstance(model, CC4Model):
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "cc4",
            "dims": {
                "R": model.n_inputs,
                "S": model.n_hidden,
                "k": model.n_outputs,
            },
            "radius": model.radius,
            "hidden_weights": model.hidden_weights.tolist(),
            "bias_weights": model.bias_weights.tolist(),
            "output_weights": model.output_weights.tolist(),
        }
    elif isinstance(model, CC1Model):
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "cc1",
            "dims": {
                "R": model.n_inputs,
                "S": model.n_stored,
                "k": model.codes.shape[1],
            },
            "inputs": model.inputs.tolist(),
            "codes": model.codes.tolist(),
            "radii": model.radii.tolist(),
            "knn_k": model.knn_k,
            "mode": model.mode,
            "membership": model.membership,
            "sigma": model.sigma,
            "targets": None if model.targets is None else model.targets.tolist(),
        }
    else:
        raise TypeError(f"cannot save {type(model).__name__}")
    if meta:
        doc["meta"] = meta
    with open(path, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _read_document(path) -> dict:
    with open(path, "r") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"invalid model file {path}: {exc.msg} at byte {exc.pos}"
        ) from exc
    if not isinstance(doc, dict):
        raise ModelFormatError(f"invalid model file {path}: expected a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported format_version {version!r} (this build reads {FORMAT_VERSION})"
        )
    return doc


def load_model(path):
    """Load a model saved by ``save_model``; rejects unknown versions."""
    doc = _read_document(path)
    kind = doc.get("kind")
    try:
        if kind == "cc4":
            hidden = np.array(doc["hidden_weights"], dtype=np.int8)
            bias = np.array(doc["bias_weights"], dtype=np.int32)
            out_w = np.array(doc["output_weights"], dtype=np.int8)
            for arr in (hidden, bias, out_w):
                arr.flags.writeable = False
            return CC4Model(hidden, bias, out_w, int(doc["radius"]))
        if kind == "cc1":
            inputs = np.array(doc["inputs"], dtype=np.uint8)
            codes = np.array(doc["codes"], dtype=np.uint8)
            radii = np.array(doc["radii"], dtype=np.int32)
            targets = doc.get("targets")
            target_arr = None if targets is None else np.array(targets, dtype=np.float64)
            sigma = doc.get("sigma")
            arrays = (inputs, codes, radii) + (
                (target_arr,) if target_arr is not None else ()
            )
            for arr in arrays:
                arr.flags.writeable = False
            return CC1Model(
                inputs,
                codes,
                radii,
                int(doc["knn_k"]),
                str(doc["mode"]),
                str(doc["membership"]),
                None if sigma is None else float(sigma),
                target_arr,
            )
    except KeyError as exc:
        raise ModelFormatError(f"model file {path} is missing field {exc}") from exc
    raise ModelFormatError(f"unknown model kind {kind!r} in {path}")


def read_model_meta(path) -> dict:
    """The ``meta`` block stored alongside a model (empty dict if absent)."""
    return _read_document(path).get("meta", {}) or {}
