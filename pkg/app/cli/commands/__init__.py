from app.cli.commands import estimate, fourier, learn, lowerbound, sample, spectrum, verify

COMMANDS = [sample, estimate, learn, spectrum, fourier, lowerbound, verify]

__all__ = ["COMMANDS"]
