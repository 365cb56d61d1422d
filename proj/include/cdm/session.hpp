#pragma once

#include <filesystem>

#include "cdm/model.hpp"

namespace cdm {

// Exclusive owner of one log file. The file is locked (flock) for the
// lifetime of the object; mutations made against model() reach disk via
// sync(), which appends the not-yet-flushed records one by one, each
// fully written and flushed before the next.
class LogFile {
public:
    // Creates an empty log. Fails if the file already exists.
    static void init(const std::filesystem::path& path);

    // Opens, locks and replays an existing log.
    explicit LogFile(const std::filesystem::path& path);
    ~LogFile();

    LogFile(const LogFile&) = delete;
    LogFile& operator=(const LogFile&) = delete;

    Model& model() { return model_; }
    const std::filesystem::path& path() const { return path_; }

    // Appends every record the file does not have yet; returns how many
    // were written.
    std::size_t sync();

private:
    std::filesystem::path path_;
    int fd_ = -1;
    Model model_;
    std::size_t flushed_records_ = 0;
};

}  // namespace cdm
