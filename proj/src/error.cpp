/*
 * Copyright 2026 The pausegate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pausegate/error.hpp"

namespace pausegate {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kSampleRateTooLow: return "SampleRateTooLow";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kWriteFailure: return "WriteFailure";
    case ErrorCode::kWindowTooShort: return "WindowTooShort";
    case ErrorCode::kInvalidBand: return "InvalidBand";
    case ErrorCode::kBandAboveNyquist: return "BandAboveNyquist";
    case ErrorCode::kEmptyBand: return "EmptyBand";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidSpeakerId: return "InvalidSpeakerId";
    case ErrorCode::kInvalidTimestamp: return "InvalidTimestamp";
    case ErrorCode::kEmptyProfile: return "EmptyProfile";
    case ErrorCode::kStoreCorrupt: return "StoreCorrupt";
    case ErrorCode::kStoreWriteFailure: return "StoreWriteFailure";
    case ErrorCode::kStoreLocked: return "StoreLocked";
    case ErrorCode::kInvalidScript: return "InvalidScript";
  }
  return "Unknown";
}

}  // namespace pausegate
