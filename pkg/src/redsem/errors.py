class EngineError(Exception):
    """Base class for all errors raised by the engine."""
