#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "degdet/instance.hpp"

namespace degdet {

inline constexpr int kSchemaVersion = 1;

using AnyInstance = std::variant<Instance, IntegerInstance, PartitionedInstance>;

/// JSON with sorted keys; equal instances give identical bytes.
std::string save(const Instance& inst);
std::string save(const IntegerInstance& inst);
std::string save(const PartitionedInstance& inst);
std::string save(const AnyInstance& inst);

/// Files with `blocks` load as PartitionedInstance, files without `prime` as
/// IntegerInstance. Throws FormatError, VersionMismatch or NonPrime.
AnyInstance load(std::string_view bytes);

AnyInstance load_file(const std::string& path);
void save_file(const std::string& path, const AnyInstance& inst);

/// FNV-1a 64 of the bytes as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace degdet
