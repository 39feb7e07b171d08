"""Exception hierarchy shared by every stage of the pipeline."""


class PetriGameError(Exception):
    pass


class ParseError(PetriGameError, ValueError):
    pass


class NotEnabled(PetriGameError):
    pass


class SafetyViolation(PetriGameError):
    pass


class StateCapExceeded(PetriGameError):
    pass


class ClosureCapExceeded(PetriGameError):
    pass


class NotARegion(PetriGameError):
    pass


class NotCompatible(PetriGameError):
    pass


class NotEnvironment(PetriGameError):
    pass


class XNotAllowed(ParseError):
    pass


class UnknownAtom(PetriGameError):
    pass


class StrategySelectsDisabled(PetriGameError):
    pass


class UnresolvableObservation(PetriGameError):
    pass
