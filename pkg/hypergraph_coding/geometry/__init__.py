"""Minimum enclosing balls."""

from hypergraph_coding.geometry.ball import Ball, ball_oracle_bruteforce, min_enclosing_ball

__all__ = ["Ball", "ball_oracle_bruteforce", "min_enclosing_ball"]
