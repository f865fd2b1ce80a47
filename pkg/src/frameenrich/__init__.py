"""Enrich wordnet-style verb frames ("NN.Pp") with prepositions, case and
semantic filler categories mined from a chunk-parsed corpus."""

__version__ = "0.1.0"
