"""Walk ↔ sign-string-pair bijection for two-dimensional walks."""
from bijection.sign_bijection import (
    SignPair,
    SignString,
    count_balanced_pairs,
    decode_pair,
    encode_walk,
    iter_balanced_pairs,
    partial_sums,
    rotation_view,
)

__all__ = [
    "SignPair",
    "SignString",
    "count_balanced_pairs",
    "decode_pair",
    "encode_walk",
    "iter_balanced_pairs",
    "partial_sums",
    "rotation_view",
]
