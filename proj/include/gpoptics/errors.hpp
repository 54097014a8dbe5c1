/**********
 *   Copyright 2026 The gpoptics Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/
#pragma once

#include <stdexcept>

namespace gpoptics {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// polarization_core
struct ZeroIntensity : Error { using Error::Error; };
struct OrthogonalStates : Error { using Error::Error; };

// sphere geometry
struct OpenPath : Error { using Error::Error; };
struct DegeneratePath : Error { using Error::Error; };
struct FrameMismatch : Error { using Error::Error; };
struct AntipodalPoints : Error { using Error::Error; };

// beam fields
struct BadGeometry : Error { using Error::Error; };
struct BadEps : Error { using Error::Error; };
struct ZeroIntensityRegion : Error { using Error::Error; };

// angular-momentum analysis
struct EmptyComponent : Error { using Error::Error; };
struct Undersampled : Error { using Error::Error; };
struct NearZeroAmplitude : Error { using Error::Error; };
struct ZeroPower : Error { using Error::Error; };
struct GeometryMismatch : Error { using Error::Error; };

// interference readout
struct AmbiguousPattern : Error { using Error::Error; };

// CLI / configuration
struct ConfigError : Error { using Error::Error; };

}  // namespace gpoptics
