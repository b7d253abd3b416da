#ifndef TEXWEAVE_LOG_HPP
#define TEXWEAVE_LOG_HPP

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace texweave {

enum class log_level { error = 0, warn = 1, info = 2, debug = 3 };

namespace detail {

inline log_level parse_log_level(const char* name)
{
    if (!name) return log_level::warn;
    const std::string s(name);
    if (s == "error") return log_level::error;
    if (s == "warn" || s == "warning") return log_level::warn;
    if (s == "info") return log_level::info;
    if (s == "debug") return log_level::debug;
    return log_level::warn;
}

inline std::mutex& log_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace detail

/// Threshold read once from TEXWEAVE_LOG (error|warn|info|debug, default warn).
inline log_level log_threshold()
{
    static const log_level level = detail::parse_log_level(std::getenv("TEXWEAVE_LOG"));
    return level;
}

inline void log(log_level level, const std::string& message)
{
    if (level > log_threshold()) return;
    const char* tag = level == log_level::error  ? "error"
                      : level == log_level::warn ? "warn"
                      : level == log_level::info ? "info"
                                                 : "debug";
    std::lock_guard<std::mutex> lock(detail::log_mutex());
    std::cerr << "texweave " << tag << ": " << message << "\n";
}

inline void log_error(const std::string& m) { log(log_level::error, m); }
inline void log_warn(const std::string& m) { log(log_level::warn, m); }
inline void log_info(const std::string& m) { log(log_level::info, m); }
inline void log_debug(const std::string& m) { log(log_level::debug, m); }

} // namespace texweave

#endif
