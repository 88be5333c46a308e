"""Configuration module for the total p-differentials toolkit."""
