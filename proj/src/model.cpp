#include "appemo/model.hpp"

#include <stdexcept>

#include "appemo/text.hpp"

namespace appemo {

void validate(const AppRecord& app) {
  if (app.app_id.empty()) throw std::invalid_argument("app without app_id");
  if (!(app.price >= 0.0)) {
    throw std::invalid_argument("app " + app.app_id + ": negative price");
  }
  if (app.is_free != (app.price == 0.0)) {
    throw std::invalid_argument("app " + app.app_id +
                                ": is_free disagrees with price");
  }
}

void validate(const Review& review) {
  if (review.review_id.empty()) {
    throw std::invalid_argument("review without review_id");
  }
  if (review.app_id.empty()) {
    throw std::invalid_argument("review " + review.review_id +
                                ": missing app_id");
  }
  if (review.rating < 1 || review.rating > 5) {
    throw std::invalid_argument("review " + review.review_id +
                                ": rating outside 1..5");
  }
  if (!review.date.ok()) {
    throw std::invalid_argument("review " + review.review_id +
                                ": invalid date");
  }
  if (review.helpful_votes < 0) {
    throw std::invalid_argument("review " + review.review_id +
                                ": negative helpful_votes");
  }
}

std::size_t review_length(const Review& review) {
  return text::codepoint_length(review.title) +
         text::codepoint_length(review.body);
}

}  // namespace appemo
