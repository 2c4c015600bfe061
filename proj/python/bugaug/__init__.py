# Copyright 2026 The bugaug Authors.
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

"""Bug report augmentation and bug-inducing hunk retrieval."""

from bugaug._core import (
    Token,
    UsageError,
    __version__,
    bm25_rank,
    classify_text,
    derive_seed,
    evaluate,
    levenshtein,
    op_budget,
    random_swap,
    reduced_stack_traces,
    render_tokens,
    run_pipeline,
    tokenize_prose,
    top_k_substitutes,
)

__all__ = [
    "Token",
    "UsageError",
    "__version__",
    "bm25_rank",
    "classify_text",
    "derive_seed",
    "evaluate",
    "levenshtein",
    "op_budget",
    "random_swap",
    "reduced_stack_traces",
    "render_tokens",
    "run_pipeline",
    "tokenize_prose",
    "top_k_substitutes",
]
