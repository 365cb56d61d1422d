#include "cdm/session.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "cdm/storage.hpp"

namespace cdm {

namespace {

[[noreturn]] void io_fail(const std::string& what, const std::filesystem::path& path) {
    throw Error(Errc::io_error, what + ": " + path.string() + " (" + std::strerror(errno) + ")");
}

}  // namespace

void LogFile::init(const std::filesystem::path& path) {
    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw Error(Errc::io_error, "log file already exists: " + path.string());
        io_fail("cannot create log file", path);
    }
    ::close(fd);
}

LogFile::LogFile(const std::filesystem::path& path) : path_(path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_APPEND);
    if (fd_ < 0) io_fail("cannot open log file", path);
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw Error(Errc::log_locked, "log file is locked by another process: " + path.string());
    }

    std::string content;
    char buf[1 << 16];
    ssize_t n;
    while ((n = ::read(fd_, buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(n));
    if (n < 0) {
        ::close(fd_);
        fd_ = -1;
        io_fail("cannot read log file", path);
    }
    model_ = replay(content);
    flushed_records_ = model_.log().size();
}

LogFile::~LogFile() {
    if (fd_ >= 0) ::close(fd_);  // releases the lock
}

std::size_t LogFile::sync() {
    const auto& log = model_.log();
    std::size_t written = 0;
    for (std::size_t i = flushed_records_; i < log.size(); ++i) {
        std::string line = format_record(log[i]);
        line += '\n';
        std::size_t off = 0;
        while (off < line.size()) {
            ssize_t n = ::write(fd_, line.data() + off, line.size() - off);
            if (n < 0) io_fail("cannot append to log file", path_);
            off += static_cast<std::size_t>(n);
        }
        if (::fdatasync(fd_) != 0) io_fail("cannot flush log file", path_);
        ++flushed_records_;
        ++written;
    }
    return written;
}

}  // namespace cdm
