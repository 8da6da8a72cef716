// Copyright 2026 The auclearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auclearn/error.h"

namespace auclearn {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kWeightSumZero: return "WeightSumZero";
    case ErrorCode::kAtomOutOfRange: return "AtomOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonMonotoneWitness: return "NonMonotoneWitness";
    case ErrorCode::kTooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kCostExceedsMean: return "CostExceedsMean";
    case ErrorCode::kClaimAboveInspection: return "ClaimAboveInspection";
    case ErrorCode::kOddSampleCount: return "OddSampleCount";
    case ErrorCode::kEpsTooLarge: return "EpsTooLarge";
    case ErrorCode::kParse: return "parse";
  }
  return "Unknown";
}

}  // namespace auclearn
