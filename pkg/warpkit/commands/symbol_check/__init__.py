from .lib import SymbolCheckArgs, SymbolCheckInput, SymbolCheckResult, symbol_check

__all__ = ["SymbolCheckArgs", "SymbolCheckInput", "SymbolCheckResult", "symbol_check"]
