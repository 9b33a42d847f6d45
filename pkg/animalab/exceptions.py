from . import gettext


class AnimalabError(Exception):
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


class InvalidVertex(AnimalabError):
    def __init__(self, vertex):
        self.vertex = tuple(vertex)
        super(InvalidVertex, self).__init__(
            gettext("The vertex %(vertex)s is not on the lattice: the height "
                    "must be non-negative and x + y must be even.") %
            {'vertex': self.vertex}
        )


class InvalidAnimal(AnimalabError):
    def __init__(self, reason):
        self.reason = reason
        super(InvalidAnimal, self).__init__(
            gettext("This vertex set is not a directed animal: %(reason)s") %
            {'reason': reason}
        )


class InvalidAdmissibleSet(AnimalabError):
    def __init__(self, elems):
        self.elems = tuple(elems)
        super(InvalidAdmissibleSet, self).__init__(
            gettext("%(elems)s is not admissible: it must be non-empty with "
                    "all elements of one parity.") % {'elems': self.elems}
        )


class InvalidPath(AnimalabError):
    def __init__(self, index, condition, detail=''):
        self.index = index
        self.condition = condition
        super(InvalidPath, self).__init__(
            gettext("Path violates condition (%(condition)s) at index "
                    "%(index)d. %(detail)s") %
            {'condition': condition, 'index': index, 'detail': detail}
        )


class DomainError(AnimalabError):
    def __init__(self, name, value):
        self.name = name
        super(DomainError, self).__init__(
            gettext("%(value)r is outside the domain of %(name)s.") %
            {'value': value, 'name': name}
        )


class StepCapExceeded(AnimalabError):
    def __init__(self, cap):
        self.cap = cap
        super(StepCapExceeded, self).__init__(
            gettext("The walk did not stop within %(cap)d steps. Raise "
                    "ANIMALAB_STEP_CAP or retry with another stream.") %
            {'cap': cap}
        )


class RetryBudgetExceeded(AnimalabError):
    def __init__(self, attempts, accepted=0):
        self.attempts = attempts
        self.accepted = accepted
        super(RetryBudgetExceeded, self).__init__(
            gettext("Rejection sampling gave up after %(attempts)d attempts "
                    "(%(accepted)d accepted).") %
            {'attempts': attempts, 'accepted': accepted}
        )


class EnumerationCapExceeded(AnimalabError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super(EnumerationCapExceeded, self).__init__(
            gettext("Size %(size)d is above the enumeration cap %(cap)d. "
                    "Use sample_transition instead of enumerating.") %
            {'size': size, 'cap': cap}
        )


class NotProperBoundary(AnimalabError):
    def __init__(self, reason):
        super(NotProperBoundary, self).__init__(
            gettext("Not a proper boundary subset: %(reason)s") %
            {'reason': reason}
        )


class UnknownExperiment(AnimalabError):
    def __init__(self, name):
        super(UnknownExperiment, self).__init__(
            gettext("There is no experiment called %(name)r.") %
            {'name': name}
        )


class UnknownIdentity(AnimalabError):
    def __init__(self, name):
        super(UnknownIdentity, self).__init__(
            gettext("There is no identity called %(name)r.") % {'name': name}
        )
