#include "aplim/data.hpp"

#include <cstdio>
#include <sstream>
#include <string>

#include "aplim/errors.hpp"

namespace aplim::data {

std::string_view embedded_text(std::string_view name) {
    for (std::size_t i = 0; i < detail::k_embedded_file_count; ++i)
        if (name == detail::k_embedded_files[i].name) return detail::k_embedded_files[i].text;
    throw Error("embedded_text: no such data file '" + std::string(name) + "'");
}

void verify_checksums() {
    std::istringstream in{std::string(embedded_text("checksums.txt"))};
    std::string name, hex;
    std::size_t checked = 0;
    while (in >> name >> hex) {
        std::uint64_t want = std::stoull(hex, nullptr, 16);
        std::uint64_t got = fnv1a64(embedded_text(name));
        if (want != got) {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(got));
            throw DataChecksumMismatch("data file '" + name + "' hashes to " + buf +
                                       ", checksums.txt says " + hex);
        }
        ++checked;
    }
    if (checked == 0) throw DataChecksumMismatch("checksums.txt is empty");
}

namespace {
const Recurrence& cached(const char* file) {
    static const Recurrence apery = parse_recurrence(std::string(embedded_text("apery_zeta3.rec")));
    static const Recurrence j = parse_recurrence(std::string(embedded_text("j_family.rec")));
    static const Recurrence wedge = parse_recurrence(std::string(embedded_text("a_wedge.rec")));
    std::string_view f(file);
    if (f == "apery") return apery;
    if (f == "j") return j;
    return wedge;
}
}  // namespace

const Recurrence& apery_recurrence() { return cached("apery"); }
const Recurrence& j_family_recurrence() { return cached("j"); }
const Recurrence& wedge_recurrence() { return cached("wedge"); }

}  // namespace aplim::data
