"""Super-ray graph transform light field codec."""

from srgf._core import (
    BitstreamError,
    InputError,
    analyze,
    decode,
    decode_signed_stream,
    eigendecompose,
    encode,
    encode_signed_stream,
    layered_scene,
    load_light_field,
    psnr,
    save_light_field,
    select_sampling_set,
    textured_plane,
)

__all__ = [
    "BitstreamError",
    "InputError",
    "analyze",
    "decode",
    "decode_signed_stream",
    "eigendecompose",
    "encode",
    "encode_signed_stream",
    "layered_scene",
    "load_light_field",
    "psnr",
    "save_light_field",
    "select_sampling_set",
    "textured_plane",
]
