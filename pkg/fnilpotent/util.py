"""Small general-purpose utilities: cached properties, frozen mappings, sentinels."""


class lazyprop:
    """
    A descriptor implementation of lazyprop (cached property) from David Beazley's "Python Cookbook" book.
    The value is computed on first access and stored on the instance, so later reads are plain attribute reads.
    This is what makes the Groebner basis of an ideal handle write-once.

    >>> class Handle:
    ...     def __init__(self, gens):
    ...         self.gens = gens
    ...     @lazyprop
    ...     def basis(self):
    ...         print('computing basis')
    ...         return sorted(set(self.gens))
    >>> h = Handle(['y', 'x', 'y'])
    >>> h.__dict__
    {'gens': ['y', 'x', 'y']}
    >>> h.basis
    computing basis
    ['x', 'y']
    >>> h.basis
    ['x', 'y']
    >>> del h.basis  # dropping the cached value forces a recomputation
    >>> h.basis
    computing basis
    ['x', 'y']
    """

    def __init__(self, func):
        self.func = func
        self.__doc__ = func.__doc__

    def __get__(self, instance, cls):
        if instance is None:
            return self
        else:
            value = self.func(instance)
            setattr(instance, self.func.__name__, value)
            return value


class FrozenDict(dict):
    """A dict that refuses every mutation after construction, and hashes by its items.

    Used for the package defaults and the parsed inputs of a command-line session.

    >>> d = FrozenDict(emax=4, big_e=2)
    >>> d.updated(emax=3)['emax'], d['emax']
    (3, 4)
    >>> d['emax'] = 1
    Traceback (most recent call last):
      ...
    TypeError: FrozenDict object is immutable
    >>> hash(d) == hash(FrozenDict(big_e=2, emax=4))
    True
    """
    __slots__ = ()

    def updated(self, *a, **kw):
        """A copy with the given items overriding ours."""
        data = dict(self)
        data.update(*a, **kw)
        return type(self)(data)

    def __repr__(self):
        return f"{type(self).__name__}({dict.__repr__(self)})"

    def __hash__(self):
        return hash(frozenset(self.items()))

    def _immutable(self, *a, **kw):
        raise TypeError(f"{type(self).__name__} object is immutable")

    __setitem__ = __delitem__ = update = setdefault = pop = popitem = clear = _immutable

    del _immutable


def make_sentinel(name='_MISSING', var_name=None, sorts_below=False):
    """Creates and returns a new **instance** of a new class, suitable for
    usage as a "sentinel", a kind of singleton used to indicate a special value
    when ``None`` is a valid input.

    Args:
        name (str): Name of the Sentinel
        var_name (str): Set this name to the name of the variable in
            its respective module enable pickleability.
        sorts_below (bool): make the sentinel compare strictly below every other
            value (used for the dimension of the empty variety).

    >>> make_sentinel(var_name='_MISSING')
    _MISSING
    >>> bottom = make_sentinel('BOTTOM', var_name='BOTTOM', sorts_below=True)
    >>> bottom < 0, 0 > bottom, bottom < bottom, bottom <= bottom, max(bottom, 2)
    (True, True, False, True, 2)
    >>> make_sentinel('TEST') == make_sentinel('TEST')
    False
    """

    class Sentinel(object):
        def __init__(self):
            self.name = name
            self.var_name = var_name

        def __repr__(self):
            if self.var_name:
                return self.var_name
            return '%s(%r)' % (self.__class__.__name__, self.name)

        if var_name:
            def __reduce__(self):
                return self.var_name

        def __nonzero__(self):
            return False

        __bool__ = __nonzero__

        if sorts_below:
            def __lt__(self, other):
                return other is not self

            def __le__(self, other):
                return True

            def __gt__(self, other):
                return False

            def __ge__(self, other):
                return other is self

            def __eq__(self, other):
                return other is self

            def __hash__(self):
                return hash((Sentinel, self.name))

    return Sentinel()


# dimension of the unit ideal (empty variety)
NEG_INFINITY = make_sentinel('NEG_INFINITY', var_name='NEG_INFINITY', sorts_below=True)

