"""Allow ``python -m xacml_analyzer``."""

from xacml_analyzer.cli.main import run

if __name__ == "__main__":
    run()
