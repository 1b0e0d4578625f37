"""Decorators. ``log_calls`` is the package's call logger for the expensive entry points."""
import logging
from functools import wraps
from typing import Any, Callable, Dict, Tuple

logger = logging.getLogger('fnilpotent')

Args = Tuple
Kwargs = Dict
WhatToLog = Callable[[Callable, Args, Kwargs], Any]


def _special_str(x: Any, max_len=60) -> str:
    """ A util function for _call_signature. Long reprs (big ideals, long polynomials) get cut."""
    if isinstance(x, str):
        return "'" + x + "'"
    else:
        x_str = str(x)
        if len(x_str) > max_len:
            type_str = getattr(type(x), '__name__', str(type(x)))
            x_str = "{}({}...)".format(type_str, x_str[:20])
        return x_str


def _call_signature(func: Callable, args: Args, kwargs: Kwargs) -> str:
    """
    A util to make a string representation of a call of a function func with given args and kwargs.
    Meant to be the default what_to_log of mk_call_logger.
    :param func: A callable
    :param args: A tuple of positional arguments
    :param kwargs: A dict of key=val arguments
    :return: A string to represent all of that.

    >>> print(_call_signature(_call_signature, (2, 'x^2+y', list(range(1000))), {'e_max': 3}))
    Executing: _call_signature(2, 'x^2+y', list([0, 1, 2, 3, 4, 5, 6...), e_max=3)
    """
    args_signature = ", ".join(map(_special_str, args))
    kwargs_signature = ", ".join(("{}={}".format(k, _special_str(v)) for k, v in kwargs.items()))
    signature = ", ".join(s for s in (args_signature, kwargs_signature) if s)
    return "Executing: {func_name}({signature})".format(func_name=func.__name__, signature=signature)


def mk_call_logger(logger=logger.debug, what_to_log: WhatToLog = _call_signature):
    """
    Makes a decorator that logs each call to the wrapped function.
    :param logger: The actual function that logs stuff. Default is the package logger at DEBUG level.
        The "stuff" it logs is given by the what_to_log argument (a function).
    :param what_to_log: A function taking inputs (func, args, kwargs) of the call, and returning something to log
        (usually, and by default, a string)
    :return: A decorator

    >>> @mk_call_logger(logger=print)
    ... def bracket_exponent(p, e=1):
    ...     return p ** e
    ...
    >>> bracket_exponent(3, e=2)
    Executing: bracket_exponent(3, e=2)
    9
    >>> def _name_only(func, args, kwargs) -> str:
    ...     return "calling {}".format(func.__name__)
    >>> mk_call_logger(logger=print, what_to_log=_name_only)(bracket_exponent.__wrapped__)(2)
    calling bracket_exponent
    2
    """

    def log_calls(func):
        @wraps(func)
        def _func(*args, **kwargs):
            logger(what_to_log(func, args, kwargs))
            return func(*args, **kwargs)

        return _func

    return log_calls


log_calls = mk_call_logger()
