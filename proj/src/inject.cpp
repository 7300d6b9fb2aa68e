#include "hierarchia/inject.hpp"

#include <atomic>
#include <mutex>

namespace hierarchia::inject {

namespace {
std::atomic<bool> g_active{false};
std::mutex g_mu;
std::string g_key;
Rational g_delta;
}  // namespace

void set(const std::string& key, const Rational& delta) {
    std::lock_guard<std::mutex> lock(g_mu);
    g_key = key;
    g_delta = delta;
    g_active = true;
}

void clear() {
    std::lock_guard<std::mutex> lock(g_mu);
    g_active = false;
    g_key.clear();
}

bool active() { return g_active.load(std::memory_order_relaxed); }

Rational delta(const std::string& key) {
    if (!active()) return Rational(0);
    std::lock_guard<std::mutex> lock(g_mu);
    return key == g_key ? g_delta : Rational(0);
}

std::string current_key() {
    std::lock_guard<std::mutex> lock(g_mu);
    return g_active ? g_key : std::string();
}

}  // namespace hierarchia::inject
