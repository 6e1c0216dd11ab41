#include "asdk/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

#include "asdk/build_paths.hpp"
#include "asdk/sampling.hpp"

namespace asdk {

namespace {
std::string g_data_dir;  // empty = unset
std::mutex g_data_dir_mutex;
int g_num_threads = 0;
}  // namespace

void set_data_dir(const std::string& path) {
  std::lock_guard<std::mutex> lock(g_data_dir_mutex);
  g_data_dir = path;
}

std::string data_dir() {
  {
    std::lock_guard<std::mutex> lock(g_data_dir_mutex);
    if (!g_data_dir.empty()) return g_data_dir;
  }
  if (const char* env = std::getenv("ASDK_DATA_DIR")) return env;
  return ASDK_DEFAULT_DATA_DIR;
}

double Rng::next_normal() { return inverse_normal_cdf(next_uniform()); }

void set_num_threads(int n) { g_num_threads = n < 0 ? 0 : n; }

int num_threads() {
  if (g_num_threads > 0) return g_num_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_blocks(std::size_t n, std::size_t block,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (block == 0) block = 1;
  const std::size_t n_blocks = (n + block - 1) / block;
  const int workers = std::min<std::size_t>(num_threads(), n_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b * block, std::min(n, (b + 1) * block));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) return;
        try {
          fn(b * block, std::min(n, (b + 1) * block));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace asdk
