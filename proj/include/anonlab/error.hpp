// Copyright 2026 The anonlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anonlab {

/// Every failure the library reports carries one of these codes, so callers
/// (and the HTTP layer) can branch on the kind without parsing messages.
enum class ErrorCode {
  // signal-core
  MissingFile,
  UnsupportedFormat,
  EmptyAudio,
  IoFailure,
  InvalidFraming,
  // mcadams-anonymizer
  InvalidConfig,
  NumericalFailure,
  RootFindingFailure,
  ConjugateAsymmetry,
  UnstableFilter,
  // privacy-utility-metrics
  DimensionMismatch,
  ZeroNormEmbedding,
  EmptyScores,
  DegenerateLabels,
  AudioTooShort,
  // stats-engine
  EmptyTrials,
  InvalidSample,
  ZeroVariance,
  IncompleteTable,
  TooFewGroups,
  EmptySample,
  SampleTooSmall,
  ConstantSample,
  InvalidP,
  OutOfRangeRating,
  KeyMismatch,
  // study-protocol
  InvalidStudy,
  EmptyStudy,
  ReplayForbidden,
  OutOfPhaseEvent,
  DuplicateResponse,
  OrphanResponse,
  UnknownSession,
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace anonlab
