#include "ttd/td/experience_buffer.hpp"

#include <string>
#include <utility>

#include "ttd/errors.hpp"

namespace ttd {

ExperienceBuffer::ExperienceBuffer(std::size_t capacity) : slots_(capacity) {
  if (capacity == 0) {
    throw ConfigError("experience buffer capacity must be at least 1");
  }
}

std::size_t ExperienceBuffer::slot(std::size_t k) const {
  return (head_ + slots_.size() - k) % slots_.size();
}

std::optional<ExperienceRecord> ExperienceBuffer::push(const ExperienceRecord& record) {
  std::optional<ExperienceRecord> evicted;
  if (full()) {
    evicted = oldest();
  } else {
    ++size_;
  }
  head_ = (head_ + 1) % slots_.size();
  slots_[head_] = record;
  return evicted;
}

const ExperienceRecord& ExperienceBuffer::operator[](std::size_t k) const {
  if (k >= size_) {
    throw IndexOutOfRange("experience buffer index " + std::to_string(k) +
                          " out of range (size " + std::to_string(size_) + ")");
  }
  return slots_[slot(k)];
}

ExperienceRecord& ExperienceBuffer::operator[](std::size_t k) {
  return const_cast<ExperienceRecord&>(std::as_const(*this)[k]);
}

void ExperienceBuffer::clear() {
  size_ = 0;
  head_ = 0;
}

}  // namespace ttd
