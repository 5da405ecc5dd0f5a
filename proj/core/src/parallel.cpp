// Copyright 2026 The medol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medol/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace medol {

namespace {

int initial_worker_count() {
  if (const char* env = std::getenv("MEDOL_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  return 1;
}

std::atomic<int>& worker_count_slot() {
  static std::atomic<int> count{initial_worker_count()};
  return count;
}

thread_local bool inside_pool_worker = false;

// Persistent worker pool; rounds are far too short to pay a thread
// spawn per parallel_for call. Workers take fixed contiguous chunks, so
// the index->worker assignment never affects results.
class Pool {
 public:
  explicit Pool(int workers) : workers_(workers) {
    threads_.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads_.emplace_back([this, w] { worker_loop(w); });
  }

  ~Pool() {
    {
      std::scoped_lock lock(mutex_);
      stop_ = true;
    }
    start_.notify_all();
    for (auto& t : threads_) t.join();
  }

  void run(std::size_t count, const std::function<void(std::size_t)>& body) {
    std::unique_lock lock(mutex_);
    job_ = &body;
    count_ = count;
    pending_ = workers_;
    first_error_ = nullptr;
    ++generation_;
    start_.notify_all();
    done_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
    if (first_error_) std::rethrow_exception(first_error_);
  }

  int workers() const { return workers_; }

 private:
  void worker_loop(int index) {
    inside_pool_worker = true;
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(std::size_t)>* job = nullptr;
      std::size_t count = 0;
      {
        std::unique_lock lock(mutex_);
        start_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        job = job_;
        count = count_;
      }
      const std::size_t w = static_cast<std::size_t>(index);
      const std::size_t n = static_cast<std::size_t>(workers_);
      const std::size_t begin = count * w / n;
      const std::size_t end = count * (w + 1) / n;
      try {
        for (std::size_t i = begin; i < end; ++i) (*job)(i);
      } catch (...) {
        std::scoped_lock lock(mutex_);
        if (!first_error_) first_error_ = std::current_exception();
      }
      {
        std::scoped_lock lock(mutex_);
        if (--pending_ == 0) done_.notify_all();
      }
    }
  }

  const int workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_, done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t count_ = 0;
  int pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
};

std::mutex pool_mutex;
std::unique_ptr<Pool> pool;

}  // namespace

int worker_count() { return worker_count_slot().load(); }

void set_worker_count(int workers) {
  worker_count_slot().store(workers >= 1 ? workers : 1);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int workers = worker_count();
  // Serial when there is nothing to split, and inside pool workers
  // (nested calls must not wait on the pool they run in).
  if (workers <= 1 || count <= 1 || inside_pool_worker) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::scoped_lock lock(pool_mutex);
  if (!pool || pool->workers() != workers) {
    pool.reset();
    pool = std::make_unique<Pool>(workers);
  }
  pool->run(count, body);
}

}  // namespace medol
