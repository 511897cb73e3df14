from .core import (
    default_backend,
    par_both,
    par_eval_2,
    par_eval_n_lazy,
    par_fanout,
    partition_eithers,
    set_default_backend,
)
from .lists import (
    chunks_of,
    concat,
    right_rotate,
    rotate_right,
    shuffle,
    shuffle_list,
    take_each,
    transpose,
    unshuffle,
    unshuffle_list,
)
from .maps import farm, farm_chunk, par_map, par_map_stream
from .topology import par_compose, pipe, pipe2, pipe_simple, ring, torus

__all__ = [
    "chunks_of",
    "concat",
    "default_backend",
    "farm",
    "farm_chunk",
    "par_both",
    "par_compose",
    "par_eval_2",
    "par_eval_n_lazy",
    "par_fanout",
    "par_map",
    "par_map_stream",
    "partition_eithers",
    "pipe",
    "pipe2",
    "pipe_simple",
    "right_rotate",
    "ring",
    "rotate_right",
    "set_default_backend",
    "shuffle",
    "shuffle_list",
    "take_each",
    "torus",
    "transpose",
    "unshuffle",
    "unshuffle_list",
]
