class AnalysisError(Exception):
    """Erro base da análise; ``exit_code`` é o código devolvido pelos comandos."""

    exit_code = 2


class ConfigError(AnalysisError):
    exit_code = 1


class ArgumentError(AnalysisError, ValueError):
    pass


class DataError(AnalysisError):
    pass


class MalformedRecordError(DataError):
    def __init__(self, line_number, reason):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"Linha {line_number} malformada: {reason}")


class IncompleteRunError(DataError):
    pass


class NonConvergenceError(AnalysisError):
    exit_code = 3
