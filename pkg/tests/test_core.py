"""Tests for settings, logging and the error hierarchy."""

import json
import logging

import pytest
import structlog
from pydantic import ValidationError

from hypergraph_coding.core.errors import (
    EXIT_CODEC,
    EXIT_INSTANCE,
    EXIT_USAGE,
    AmbiguousClustering,
    ChannelError,
    CodecPreconditionError,
    ConfigurationError,
    DimensionMismatchError,
    EnumerationLimitError,
    GeometryError,
    HypergraphCodingError,
    InfeasibleRateError,
    InstanceError,
    OracleLimitError,
    PreconditionViolated,
    exit_code_for,
)
from hypergraph_coding.core.logging import configure_logging
from hypergraph_coding.core.settings import Settings, get_settings, settings


class TestSettings:
    """Behavior tests for the configuration layer."""

    def test_defaults(self, monkeypatch):
        """
        Given no environment overrides
        When settings are created
        Then the documented defaults apply
        """
        # Given
        for key in ("SOLVER_TOL", "ENUMERATION_LIMIT", "LOG_LEVEL"):
            monkeypatch.delenv(f"HYPERGRAPH_CODING_{key}", raising=False)

        # When
        fresh = Settings(_env_file=None)

        # Then
        assert fresh.solver_tol == 1e-10
        assert fresh.solver_max_iter == 10_000
        assert fresh.enumeration_limit == 24
        assert fresh.oracle_max_free_parameters == 4
        assert fresh.polar_design_samples == 10_000
        assert fresh.polar_rate_margin == 0.1
        assert fresh.log_level == "INFO"
        assert fresh.fixtures_dir.is_dir()

    def test_environment_overrides(self, monkeypatch):
        """
        Given prefixed environment variables
        When settings are created
        Then the variables override the defaults
        """
        # Given
        monkeypatch.setenv("HYPERGRAPH_CODING_SOLVER_TOL", "1e-6")
        monkeypatch.setenv("HYPERGRAPH_CODING_LOG_LEVEL", "debug")

        # When
        fresh = Settings(_env_file=None)

        # Then
        assert fresh.solver_tol == 1e-6
        assert fresh.log_level == "DEBUG"

    def test_rejects_unknown_log_level(self, monkeypatch):
        """
        Given an unknown log level
        When settings are created
        Then validation fails
        """
        monkeypatch.setenv("HYPERGRAPH_CODING_LOG_LEVEL", "chatty")

        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_get_settings_returns_global_instance(self):
        """
        Given the module-level settings
        When the accessor is called
        Then it returns the same object
        """
        assert get_settings() is settings


class TestErrors:
    """Behavior tests for the exception hierarchy and exit codes."""

    def test_every_error_shares_the_base(self):
        """
        Given every domain error type
        When checking the hierarchy
        Then all derive from HypergraphCodingError
        """
        for error in (
            ConfigurationError,
            InstanceError,
            GeometryError,
            EnumerationLimitError,
            ChannelError,
            OracleLimitError,
            PreconditionViolated,
            CodecPreconditionError,
            AmbiguousClustering,
            InfeasibleRateError,
        ):
            assert issubclass(error, HypergraphCodingError)

    def test_instance_error_names_field(self):
        """
        Given an invariant violation on a field
        When the error is rendered
        Then the message starts with the field name
        """
        error = DimensionMismatchError("f", "wrong dimension")

        assert error.field == "f"
        assert str(error).startswith("f:")

    def test_ambiguous_clustering_keeps_context(self):
        """
        Given a vertex in two maximal edges
        When the error is raised
        Then it carries the vertex and the edges
        """
        error = AmbiguousClustering(1, [[0, 1], [1, 2]])

        assert error.vertex == 1
        assert error.edges == [(0, 1), (1, 2)]

    @pytest.mark.parametrize(
        "error, code",
        [
            (AmbiguousClustering(0, []), EXIT_CODEC),
            (InfeasibleRateError("rate"), EXIT_CODEC),
            (EnumerationLimitError(30, 24), EXIT_INSTANCE),
            (InstanceError("p", "bad"), EXIT_INSTANCE),
            (GeometryError("empty"), EXIT_INSTANCE),
            (PreconditionViolated("delta"), EXIT_INSTANCE),
            (ConfigurationError("bad"), EXIT_USAGE),
        ],
    )
    def test_exit_codes(self, error, code):
        """
        Given an error raised by an operation
        When mapping it to an exit code
        Then codec failures give 3, instance and size failures 2 and the rest 1
        """
        assert exit_code_for(error) == code


class TestLogging:
    """Behavior tests for the structured logging setup."""

    @pytest.fixture(autouse=True)
    def restore_logging(self):
        yield
        configure_logging()

    def test_json_format_emits_structured_lines(self, capsys):
        """
        Given logging configured for JSON output
        When a module logs an event with context
        Then stderr holds one JSON object with the event and its keys
        """
        # Given
        configure_logging("INFO", "json")

        # When
        structlog.get_logger("hypergraph_coding.test").info("solver_done", value=0.5)

        # Then
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["event"] == "solver_done"
        assert record["value"] == 0.5
        assert record["level"] == "info"
        assert record["logger"] == "hypergraph_coding.test"

    def test_level_filters_debug_events(self, capsys):
        """
        Given logging at WARNING
        When a debug event is logged
        Then nothing is written
        """
        configure_logging("WARNING", "json")

        structlog.get_logger("hypergraph_coding.test").debug("noise")

        assert capsys.readouterr().err == ""
        assert logging.getLogger().level == logging.WARNING
