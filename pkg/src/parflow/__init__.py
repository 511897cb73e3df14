"""Composable parallel flows with interchangeable backends and algorithmic skeletons."""

from .backends import (
    Backend,
    DistConf,
    PoolBackend,
    PoolConf,
    SequentialBackend,
    SequentialConf,
    SimDistBackend,
    loop_par_eval_n,
    make_backend,
    par_eval_n,
    post_loop_par_eval_n,
)
from .errors import (
    ChannelClosed,
    DeadlockTimeout,
    DecodeError,
    EndOfStream,
    ParflowError,
    TaskError,
    UnknownSlot,
)
from .flow import (
    Flow,
    Left,
    Right,
    both,
    choose,
    compose,
    eval_n,
    fanin,
    fanout,
    first,
    identity,
    left,
    lift,
    map_flow,
    repeat,
    right,
    run,
    second,
    zip_with_flow,
)
from .futures import BasicFuture, RemoteHandle, get, lift_fut, put, unlift_fut
from .streams import Stream
from .trace import Trace, TraceEvent

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "BasicFuture",
    "both",
    "ChannelClosed",
    "choose",
    "compose",
    "DeadlockTimeout",
    "DecodeError",
    "DistConf",
    "EndOfStream",
    "eval_n",
    "fanin",
    "fanout",
    "first",
    "Flow",
    "get",
    "identity",
    "Left",
    "left",
    "lift",
    "lift_fut",
    "loop_par_eval_n",
    "make_backend",
    "map_flow",
    "par_eval_n",
    "ParflowError",
    "PoolBackend",
    "PoolConf",
    "post_loop_par_eval_n",
    "put",
    "RemoteHandle",
    "repeat",
    "Right",
    "right",
    "run",
    "second",
    "SequentialBackend",
    "SequentialConf",
    "SimDistBackend",
    "Stream",
    "TaskError",
    "Trace",
    "TraceEvent",
    "UnknownSlot",
    "unlift_fut",
    "zip_with_flow",
]
