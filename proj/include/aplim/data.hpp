#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "aplim/recurrence.hpp"

namespace aplim::data {

namespace detail {
struct EmbeddedFile {
    const char* name;
    const char* text;
};
extern const EmbeddedFile k_embedded_files[];
extern const std::size_t k_embedded_file_count;
}  // namespace detail

std::uint64_t fnv1a64(std::string_view bytes);

// Raw embedded file content; throws if the name is unknown.
std::string_view embedded_text(std::string_view name);

// Compares every embedded file against checksums.txt; throws
// DataChecksumMismatch on any disagreement.
void verify_checksums();

// Parsed-once accessors for the shipped operators (checksum-verified).
const Recurrence& apery_recurrence();
const Recurrence& j_family_recurrence();
const Recurrence& wedge_recurrence();

}  // namespace aplim::data
