#pragma once

#include "invsurf/reconstruct.hpp"

#include <filesystem>
#include <iosfwd>

namespace invsurf {

inline constexpr char kModelMagic[8] = {'I', 'N', 'V', 'S', 'U', 'R', 'F', 'M'};
inline constexpr std::uint32_t kModelVersion = 1;

/// Little-endian binary layout described in docs/model_format.md.
void write_model(std::ostream& out, const FittedModel& model);
FittedModel read_model(std::istream& in);

void save_model(const std::filesystem::path& path, const FittedModel& model);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace invsurf
