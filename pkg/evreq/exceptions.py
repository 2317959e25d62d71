class EvreqError(Exception): pass
class ConfigError(EvreqError): pass
class ImproperlyConfigured(EvreqError): pass
class MechanismError(EvreqError): pass
class NotForcingError(MechanismError): pass
class NotICError(MechanismError): pass
class ParameterError(EvreqError): pass
