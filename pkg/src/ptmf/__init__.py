"""IoT privacy threat modeling toolkit.

Submodules: taxonomy (vocabulary model), ingest (survey parsing/cleaning),
analysis (frequency matrices, rankings, critical paths), pathgraph (graph
and file exports), risk (questionnaire scoring), stats (t-test power
analysis), cli, and api.
"""

__version__ = "0.1.0"
