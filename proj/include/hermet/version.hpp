#pragma once

namespace hermet {

inline constexpr const char* kEngineName = "hermet";
inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kConfigSchemaVersion = 1;

/// Identifier of the frozen orientation and volume convention: the standard
/// top form integrates to 2^n on the unit torus and to 1 on a nilmanifold.
inline constexpr const char* kConventionId = "omega-std/unit-torus-2n";

} // namespace hermet
