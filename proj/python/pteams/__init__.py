# Copyright 2026 The pteams Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Persistent team mining over co-authorship corpora."""

from ._core import (
    InputError,
    StageError,
    brute_force_cliques,
    enumerate_maximal_cliques,
    explain,
    generate_corpus,
    great_circle_km,
    persistent_periods,
    run_pipeline,
    verify,
)

__all__ = [
    "InputError",
    "StageError",
    "brute_force_cliques",
    "enumerate_maximal_cliques",
    "explain",
    "generate_corpus",
    "great_circle_km",
    "persistent_periods",
    "run_pipeline",
    "verify",
]
