#include "sdec/tolerance.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>

namespace sdec {
namespace {

std::atomic<double> g_eps{1e-10};
std::once_flag g_env_once;

void read_env()
{
    if (const char* s = std::getenv("SIGNED_DEC_EPS")) {
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end != s && v > 0.0) g_eps.store(v);
    }
}

} // namespace

double eps()
{
    std::call_once(g_env_once, read_env);
    return g_eps.load(std::memory_order_relaxed);
}

void set_eps(double value)
{
    std::call_once(g_env_once, read_env);
    if (value > 0.0) g_eps.store(value);
}

} // namespace sdec
