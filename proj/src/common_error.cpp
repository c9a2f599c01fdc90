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

#include "anonlab/error.hpp"

namespace anonlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "missing_file";
    case ErrorCode::UnsupportedFormat: return "unsupported_format";
    case ErrorCode::EmptyAudio: return "empty_audio";
    case ErrorCode::IoFailure: return "io_failure";
    case ErrorCode::InvalidFraming: return "invalid_framing";
    case ErrorCode::InvalidConfig: return "invalid_config";
    case ErrorCode::NumericalFailure: return "numerical_failure";
    case ErrorCode::RootFindingFailure: return "root_finding_failure";
    case ErrorCode::ConjugateAsymmetry: return "conjugate_asymmetry";
    case ErrorCode::UnstableFilter: return "unstable_filter";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::ZeroNormEmbedding: return "zero_norm_embedding";
    case ErrorCode::EmptyScores: return "empty_scores";
    case ErrorCode::DegenerateLabels: return "degenerate_labels";
    case ErrorCode::AudioTooShort: return "audio_too_short";
    case ErrorCode::EmptyTrials: return "empty_trials";
    case ErrorCode::InvalidSample: return "invalid_sample";
    case ErrorCode::ZeroVariance: return "zero_variance";
    case ErrorCode::IncompleteTable: return "incomplete_table";
    case ErrorCode::TooFewGroups: return "too_few_groups";
    case ErrorCode::EmptySample: return "empty_sample";
    case ErrorCode::SampleTooSmall: return "sample_too_small";
    case ErrorCode::ConstantSample: return "constant_sample";
    case ErrorCode::InvalidP: return "invalid_p";
    case ErrorCode::OutOfRangeRating: return "out_of_range_rating";
    case ErrorCode::KeyMismatch: return "key_mismatch";
    case ErrorCode::InvalidStudy: return "invalid_study";
    case ErrorCode::EmptyStudy: return "empty_study";
    case ErrorCode::ReplayForbidden: return "replay_forbidden";
    case ErrorCode::OutOfPhaseEvent: return "out_of_phase_event";
    case ErrorCode::DuplicateResponse: return "duplicate_response";
    case ErrorCode::OrphanResponse: return "orphan_response";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::MalformedInput: return "malformed_input";
  }
  return "unknown";
}

}  // namespace anonlab
