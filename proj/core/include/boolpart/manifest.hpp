#pragma once

#include <map>
#include <string>

namespace boolpart {

/// Library version string, recorded in every manifest.
const char* version();

/// Run record attached to every emitted artifact.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::map<std::string, std::string> inputs;  // input path -> sha256
  std::map<std::string, std::string> budgets;
  std::string outcome;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

}  // namespace boolpart
