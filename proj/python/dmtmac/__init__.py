# Copyright 2026 The dmtmac Authors
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

"""Diversity-multiplexing tradeoff tools for selective-fading MIMO MAC."""

from ._core import (
    ChannelSpec,
    ContractViolation,
    DomainError,
    Error,
    InfeasibleError,
    UnsupportedError,
    classify_decay,
    dmt_anchors,
    dominant_set,
    estimate_outage,
    eval_dmt,
    golden_lambda,
    inverse_dmt,
    lambda22_from_omega,
    lambda_min,
    omega,
    rate_region_vertices,
    region_labels,
    subset_anchors,
    verify_nonvanishing,
)

__all__ = [
    "ChannelSpec",
    "ContractViolation",
    "DomainError",
    "Error",
    "InfeasibleError",
    "UnsupportedError",
    "classify_decay",
    "dmt_anchors",
    "dominant_set",
    "estimate_outage",
    "eval_dmt",
    "golden_lambda",
    "inverse_dmt",
    "lambda22_from_omega",
    "lambda_min",
    "omega",
    "rate_region_vertices",
    "region_labels",
    "subset_anchors",
    "verify_nonvanishing",
]
