#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace fomforge {

// Small value-or-error holder; enough expected-style surface for this
// library's result passing.
template <typename T, typename E>
class Expected {
public:
    Expected(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
    Expected(E error) : storage_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return storage_.index() == 0; }
    explicit operator bool() const { return ok(); }

    T& value() {
        assert(ok());
        return std::get<0>(storage_);
    }
    const T& value() const {
        assert(ok());
        return std::get<0>(storage_);
    }
    const E& error() const {
        assert(!ok());
        return std::get<1>(storage_);
    }

    T& operator*() { return value(); }
    const T& operator*() const { return value(); }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }

private:
    std::variant<T, E> storage_;
};

}  // namespace fomforge
