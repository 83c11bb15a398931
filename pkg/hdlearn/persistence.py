"""
Model files

Layout (little-endian throughout)::

    magic            4 bytes   b"HDLM"
    format_version   uint16
    model_kind       uint8     see hdlearn.models.MODEL_KINDS
    payload_length   uint64
    sha256(payload)  32 bytes
    payload          uncompressed .npz with every array plus a ``__meta__`` JSON entry
"""

import hashlib
import io
import json
import logging
import struct
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from hdlearn.exceptions import (
    ChecksumError,
    ModelFileError,
    UnknownModelKindError,
    UnsupportedVersionError,
)
from hdlearn.models import MODEL_KINDS
from hdlearn.models.base import HDModel

logger = logging.getLogger(__name__)

MAGIC = b"HDLM"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sHBQ")
DIGEST_SIZE = 32
META_KEY = "__meta__"

PathLike = Union[str, Path]


def _json_default(value: Any):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Cannot store {type(value).__name__} in model metadata")


def _little_endian(array: np.ndarray) -> np.ndarray:
    array = np.asarray(array)
    if array.dtype.byteorder not in ("<", "|") and array.dtype.itemsize > 1:
        array = array.astype(array.dtype.newbyteorder("<"))
    return np.ascontiguousarray(array)


def encode_payload(model: HDModel) -> bytes:
    meta, arrays = model.to_payload()
    if META_KEY in arrays:
        raise ModelFileError(f"'{META_KEY}' is a reserved array name")
    stored = {name: _little_endian(array) for name, array in arrays.items()}
    stored[META_KEY] = np.frombuffer(
        json.dumps(meta, default=_json_default, sort_keys=True).encode("utf-8"), dtype=np.uint8
    )
    buffer = io.BytesIO()
    np.savez(buffer, **stored)
    return buffer.getvalue()


def save_model(model: HDModel, path: PathLike) -> Path:
    """Write ``model`` to ``path`` in the versioned model-file format."""
    if model.kind not in MODEL_KINDS:
        raise UnknownModelKindError(f"Model kind {model.kind} cannot be saved")
    payload = encode_payload(model)
    header = HEADER.pack(MAGIC, FORMAT_VERSION, model.kind, len(payload))
    digest = hashlib.sha256(payload).digest()

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(header + digest + payload)
    logger.info(f"Saved {model.name} model to {path} ({len(payload)} byte payload)")
    return path


def read_header(data: bytes) -> Dict[str, int]:
    """Validate magic, version and kind; returns the parsed header fields."""
    if len(data) < len(MAGIC) and MAGIC.startswith(data):
        raise ChecksumError("Model file is truncated inside its magic")
    if data[:len(MAGIC)] != MAGIC:
        raise ModelFileError("Not an hdlearn model file (bad magic)")
    if len(data) < HEADER.size + DIGEST_SIZE:
        raise ChecksumError("Model file is truncated inside its header")

    _, version, kind, length = HEADER.unpack_from(data)
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"Model file format version {version} is not supported (expected {FORMAT_VERSION})"
        )
    if kind not in MODEL_KINDS:
        raise UnknownModelKindError(f"Unknown model kind {kind}")
    return {"version": version, "kind": kind, "length": length}


def load_model(path: PathLike) -> HDModel:
    """Read a model written by ``save_model``."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise ModelFileError(f"Model file not found: {path}")

    header = read_header(data)
    start = HEADER.size + DIGEST_SIZE
    digest = data[HEADER.size:start]
    payload = data[start:]
    if len(payload) != header["length"]:
        raise ChecksumError(
            f"Payload length {len(payload)} does not match the declared {header['length']}"
        )
    if hashlib.sha256(payload).digest() != digest:
        raise ChecksumError("Model payload checksum mismatch")

    with np.load(io.BytesIO(payload), allow_pickle=False) as archive:
        arrays = {name: archive[name] for name in archive.files}
    meta = json.loads(arrays.pop(META_KEY).tobytes().decode("utf-8"))

    model = MODEL_KINDS[header["kind"]].from_payload(meta, arrays)
    logger.info(f"Loaded {model.name} model from {path}")
    return model
