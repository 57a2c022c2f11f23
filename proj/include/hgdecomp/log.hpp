#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace hgdecomp::log {

enum class Level { Error = 0, Info = 1, Debug = 2 };

// Controlled by HGDECOMP_LOG={error|info|debug}; default error.
inline Level threshold() {
    static Level lvl = [] {
        const char* env = std::getenv("HGDECOMP_LOG");
        if (!env) {
            return Level::Error;
        }
        std::string s(env);
        if (s == "debug") {
            return Level::Debug;
        }
        if (s == "info") {
            return Level::Info;
        }
        return Level::Error;
    }();
    return lvl;
}

inline void emit(Level lvl, const std::string& msg) {
    if (lvl > threshold()) {
        return;
    }
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const char* tag = lvl == Level::Error ? "error" : (lvl == Level::Info ? "info" : "debug");
    std::cerr << "[hgdecomp:" << tag << "] " << msg << "\n";
}

inline void error(const std::string& msg) { emit(Level::Error, msg); }
inline void info(const std::string& msg) { emit(Level::Info, msg); }
inline void debug(const std::string& msg) { emit(Level::Debug, msg); }

}  // namespace hgdecomp::log
