#pragma once

#include <coroutine>
#include <exception>
#include <optional>
#include <utility>

#include "omegatree/errors.hpp"

namespace omt {

/// Resumable search that poses containment probes one at a time.
///
/// Inside the coroutine, `bool yes = co_yield probe;` suspends with `probe`
/// pending; the owner reads it with probe(), supplies the verdict with
/// answer() and resumes with advance(). advance() returns false once the
/// search has finished; result() then yields its value. A nested search is
/// forwarded with
///
///     while (sub.advance()) sub.answer(co_yield sub.probe());
template <class Probe, class T>
class ProbeTask {
 public:
  struct promise_type {
    std::optional<Probe> pending;
    bool verdict = false;
    std::optional<T> value;
    std::exception_ptr error;

    ProbeTask get_return_object() {
      return ProbeTask(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }

    struct Resume {
      promise_type* self;
      bool await_ready() const noexcept { return false; }
      void await_suspend(std::coroutine_handle<>) const noexcept {}
      bool await_resume() const noexcept { return self->verdict; }
    };
    Resume yield_value(Probe probe) {
      pending = std::move(probe);
      return Resume{this};
    }
    void return_value(T v) { value = std::move(v); }
    void unhandled_exception() { error = std::current_exception(); }
  };

  using Handle = std::coroutine_handle<promise_type>;

  ProbeTask(ProbeTask&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  ProbeTask& operator=(ProbeTask&& other) noexcept {
    if (this != &other) {
      if (handle_) handle_.destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  ProbeTask(const ProbeTask&) = delete;
  ProbeTask& operator=(const ProbeTask&) = delete;
  ~ProbeTask() {
    if (handle_) handle_.destroy();
  }

  /// Runs to the next probe (true) or to completion (false).
  bool advance() {
    if (!handle_ || handle_.done()) return false;
    handle_.promise().pending.reset();
    handle_.resume();
    if (handle_.promise().error) std::rethrow_exception(handle_.promise().error);
    return !handle_.done();
  }

  const Probe& probe() const { return *handle_.promise().pending; }
  void answer(bool yes) { handle_.promise().verdict = yes; }
  bool done() const { return !handle_ || handle_.done(); }

  T result() {
    if (!done() || !handle_.promise().value) throw Error("probe task has not finished");
    return std::move(*handle_.promise().value);
  }

 private:
  explicit ProbeTask(Handle h) : handle_(h) {}
  Handle handle_;
};

}  // namespace omt
