#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spcasi/continual.hpp"

namespace spcasi {

// A whole chain of mode models plus the config and seeds that produced it.
struct ModelArchive {
    int format_version = 1;
    std::vector<ModeModel> models;
    SolverConfig config;
    std::vector<std::uint64_t> seeds;
    std::string created;  // stored verbatim so round-trips are stable

    void validate() const;  // throws store_error(kind::invariant) on violations
};

// Writes the archive as a single JSON document. Refuses to clobber an
// existing file unless overwrite is set.
void save_chain(const ModelArchive& archive, const std::string& path, bool overwrite = false);

ModelArchive load_chain(const std::string& path);

}  // namespace spcasi
