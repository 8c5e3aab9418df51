"""Prefix codes that trade a little codelength for faster table-driven decoding."""

from ._core import (
    BlockingScheme,
    DpfxError,
    FrequencyTable,
    brute_force_optimal,
    build_code,
    classic_huffman,
    decode,
    decode_time_of_shape,
    encode,
    enumerate_shapes,
    height_bound,
    huffman,
    length_of_shape,
    optimize,
    solve_approx,
    solve_constant_hierarchy,
    solve_exact,
    solve_fixed,
    validate_shape,
)

__all__ = [
    "BlockingScheme",
    "DpfxError",
    "FrequencyTable",
    "brute_force_optimal",
    "build_code",
    "classic_huffman",
    "decode",
    "decode_time_of_shape",
    "encode",
    "enumerate_shapes",
    "height_bound",
    "huffman",
    "length_of_shape",
    "optimize",
    "solve_approx",
    "solve_constant_hierarchy",
    "solve_exact",
    "solve_fixed",
    "validate_shape",
]
