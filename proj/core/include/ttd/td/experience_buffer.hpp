#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ttd/types.hpp"

namespace ttd {

/// One step of experience. stored_utility is the utility of the successor
/// state as it was when this record was the newest one; it is never refreshed.
struct ExperienceRecord {
  StateId state = 0;
  ActionId action = 0;
  double reward = 0.0;
  double stored_utility = 0.0;
  std::optional<double> lambda_override;
};

/// Fixed-capacity sliding window of the last m steps. Index 0 is the most
/// recent record and index size()-1 the oldest; every push shifts the indices
/// by one and evicts the oldest record once the window is full.
class ExperienceBuffer {
 public:
  explicit ExperienceBuffer(std::size_t capacity);

  std::optional<ExperienceRecord> push(const ExperienceRecord& record);

  const ExperienceRecord& operator[](std::size_t k) const;
  ExperienceRecord& operator[](std::size_t k);

  const ExperienceRecord& newest() const { return (*this)[0]; }
  ExperienceRecord& newest() { return (*this)[0]; }
  const ExperienceRecord& oldest() const { return (*this)[size_ - 1]; }

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return slots_.size(); }
  bool empty() const { return size_ == 0; }
  bool full() const { return size_ == slots_.size(); }

  void clear();

 private:
  std::size_t slot(std::size_t k) const;

  std::vector<ExperienceRecord> slots_;
  std::size_t head_ = 0;  // slot of the newest record
  std::size_t size_ = 0;
};

}  // namespace ttd
