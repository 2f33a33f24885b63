#include "chaingraph/kg/store.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <set>
#include <thread>

#include "chaingraph/error.hpp"
#include "chaingraph/kg/vocabulary.hpp"

namespace chaingraph::kg {

namespace detail {

class Subscriber {
 public:
  explicit Subscriber(EventConsumer consumer)
      : consumer_(std::move(consumer)), worker_([this] { run(); }) {}

  ~Subscriber() { stop(); }

  void push(EntityAddedEvent event) {
    {
      std::lock_guard lock(mutex_);
      if (stopping_) return;
      queue_.push_back(std::move(event));
    }
    wake_.notify_one();
  }

  void drain() {
    std::unique_lock lock(mutex_);
    idle_.wait(lock, [this] { return (queue_.empty() && !busy_) || stopping_; });
  }

  void stop() {
    {
      std::lock_guard lock(mutex_);
      if (stopping_) return;
      stopping_ = true;
    }
    wake_.notify_all();
    idle_.notify_all();
    if (worker_.joinable()) worker_.join();
  }

 private:
  void run() {
    std::unique_lock lock(mutex_);
    for (;;) {
      wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      EntityAddedEvent event = std::move(queue_.front());
      queue_.pop_front();
      busy_ = true;
      lock.unlock();
      consumer_(event);
      lock.lock();
      busy_ = false;
      if (queue_.empty()) idle_.notify_all();
    }
  }

  EventConsumer consumer_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable idle_;
  std::deque<EntityAddedEvent> queue_;
  bool busy_ = false;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace detail

Subscription::Subscription(std::shared_ptr<detail::Subscriber> subscriber)
    : subscriber_(std::move(subscriber)) {}
Subscription::Subscription(Subscription&&) noexcept = default;
Subscription& Subscription::operator=(Subscription&& other) noexcept {
  if (this != &other) {
    reset();
    subscriber_ = std::move(other.subscriber_);
  }
  return *this;
}
Subscription::~Subscription() { reset(); }

void Subscription::drain() const {
  if (subscriber_) subscriber_->drain();
}

void Subscription::reset() {
  if (subscriber_) {
    subscriber_->stop();
    subscriber_.reset();
  }
}

Store::Store() { type_id_ = intern(vocab::rdf_type()); }

Store::~Store() = default;

std::optional<Store::TermId> Store::lookup(const Term& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Store::TermId Store::intern(const Term& term) {
  auto [it, inserted] = ids_.try_emplace(term, static_cast<TermId>(terms_.size() + 1));
  if (inserted) terms_.push_back(term);
  return it->second;
}

Triple Store::materialize(const IdTriple& t) const {
  return Triple{std::get<Iri>(terms_[t[0] - 1]), std::get<Iri>(terms_[t[1] - 1]), terms_[t[2] - 1]};
}

const std::vector<std::uint32_t>* Store::postings(int position, TermId id) const {
  const auto& index = index_[static_cast<std::size_t>(position)];
  auto it = index.find(id);
  return it == index.end() ? nullptr : &it->second;
}

std::size_t Store::insert(std::span<const Triple> triples) {
  for (const auto& t : triples) {
    if (!vocab::is_allowed_predicate(t.predicate)) {
      throw ValidationError("predicate outside the vocabulary: <" + t.predicate.value + ">");
    }
  }

  std::unique_lock lock(mutex_);
  std::size_t added = 0;
  std::vector<EntityAddedEvent> events;
  for (const auto& t : triples) {
    IdTriple row{intern(t.subject), intern(t.predicate), intern(t.object)};
    if (!row_set_.insert(row).second) continue;
    auto row_index = static_cast<std::uint32_t>(rows_.size());
    rows_.push_back(row);
    for (std::size_t pos = 0; pos < 3; ++pos) index_[pos][row[pos]].push_back(row_index);
    ++revision_;
    ++added;
    if (row[1] == type_id_) {
      if (const auto* cls = as_iri(t.object)) {
        events.push_back(EntityAddedEvent{t.subject, *cls, revision_});
      }
    }
  }
  if (!events.empty()) publish(std::move(events));
  return added;
}

std::size_t Store::insert(const Triple& triple) { return insert(std::span<const Triple>(&triple, 1)); }

void Store::publish(std::vector<EntityAddedEvent> events) {
  std::lock_guard lock(subscribers_mutex_);
  std::erase_if(subscribers_, [](const auto& w) { return w.expired(); });
  for (const auto& weak : subscribers_) {
    if (auto sub = weak.lock()) {
      for (const auto& e : events) sub->push(e);
    }
  }
}

bool Store::contains(const Triple& triple) const {
  std::shared_lock lock(mutex_);
  auto s = lookup(triple.subject), p = lookup(triple.predicate), o = lookup(triple.object);
  return s && p && o && row_set_.contains(IdTriple{*s, *p, *o});
}

std::size_t Store::size() const {
  std::shared_lock lock(mutex_);
  return rows_.size();
}

std::uint64_t Store::revision() const {
  std::shared_lock lock(mutex_);
  return revision_;
}

std::vector<Triple> Store::triples() const {
  std::shared_lock lock(mutex_);
  std::vector<Triple> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(materialize(row));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> Store::match(const std::optional<Iri>& subject, const std::optional<Iri>& predicate,
                                 const std::optional<Term>& object) const {
  std::vector<TriplePattern> pattern{TriplePattern{
      subject ? PatternTerm{Term{*subject}} : PatternTerm{Variable{"s"}},
      predicate ? PatternTerm{Term{*predicate}} : PatternTerm{Variable{"p"}},
      object ? PatternTerm{*object} : PatternTerm{Variable{"o"}},
  }};
  std::vector<Triple> out;
  for (const auto& b : query(pattern)) {
    out.push_back(Triple{
        subject ? *subject : std::get<Iri>(b.at("s")),
        predicate ? *predicate : std::get<Iri>(b.at("p")),
        object ? *object : b.at("o"),
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Store::mentions(const Term& term) const {
  std::shared_lock lock(mutex_);
  auto id = lookup(term);
  return id && (postings(0, *id) || postings(2, *id));
}

namespace {

struct Compiled {
  std::array<int, 3> var{-1, -1, -1};
  std::array<std::uint32_t, 3> constant{0, 0, 0};
};

}  // namespace

std::vector<Binding> Store::query(std::span<const TriplePattern> patterns) const {
  std::shared_lock lock(mutex_);
  if (patterns.empty()) return {};

  std::vector<std::string> names;
  std::map<std::string, int> slots;
  std::vector<Compiled> compiled;
  for (const auto& pat : patterns) {
    Compiled c;
    const PatternTerm* parts[3] = {&pat.subject, &pat.predicate, &pat.object};
    for (std::size_t i = 0; i < 3; ++i) {
      if (const auto* v = std::get_if<Variable>(parts[i])) {
        auto [it, inserted] = slots.try_emplace(v->name, static_cast<int>(names.size()));
        if (inserted) names.push_back(v->name);
        c.var[i] = it->second;
      } else {
        auto id = lookup(std::get<Term>(*parts[i]));
        if (!id) return {};
        c.constant[i] = *id;
      }
    }
    compiled.push_back(c);
  }

  std::set<std::vector<TermId>> results;
  std::vector<TermId> binding(names.size(), 0);
  std::vector<bool> done(compiled.size(), false);

  std::function<void(std::size_t)> solve = [&](std::size_t remaining) {
    if (remaining == 0) {
      results.insert(binding);
      return;
    }
    // Pick the pending pattern with the shortest candidate list.
    std::size_t best = compiled.size();
    const std::vector<std::uint32_t>* best_list = nullptr;
    std::size_t best_size = SIZE_MAX;
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      if (done[i]) continue;
      const auto& c = compiled[i];
      const std::vector<std::uint32_t>* list = nullptr;
      std::size_t size = rows_.size();
      for (int pos = 0; pos < 3; ++pos) {
        TermId known = c.var[pos] < 0 ? c.constant[pos] : binding[static_cast<std::size_t>(c.var[pos])];
        if (known == 0) continue;
        const auto* p = postings(pos, known);
        if (!p) return;
        if (p->size() < size || !list) {
          size = p->size();
          list = p;
        }
      }
      if (size < best_size || best == compiled.size()) {
        best = i;
        best_size = size;
        best_list = list;
      }
    }

    const auto& c = compiled[best];
    done[best] = true;
    auto try_row = [&](const IdTriple& row) {
      std::array<bool, 3> assigned{};
      bool ok = true;
      for (int pos = 0; pos < 3 && ok; ++pos) {
        if (c.var[pos] < 0) {
          ok = row[pos] == c.constant[pos];
          continue;
        }
        auto& slot = binding[static_cast<std::size_t>(c.var[pos])];
        if (slot == 0) {
          slot = row[pos];
          assigned[pos] = true;
        } else {
          ok = slot == row[pos];
        }
      }
      if (ok) solve(remaining - 1);
      for (int pos = 0; pos < 3; ++pos) {
        if (assigned[pos]) binding[static_cast<std::size_t>(c.var[pos])] = 0;
      }
    };
    if (best_list) {
      for (auto idx : *best_list) try_row(rows_[idx]);
    } else {
      for (const auto& row : rows_) try_row(row);
    }
    done[best] = false;
  };
  solve(compiled.size());

  std::vector<Binding> out;
  out.reserve(results.size());
  for (const auto& ids : results) {
    Binding b;
    for (std::size_t i = 0; i < names.size(); ++i) b.emplace(names[i], terms_[ids[i] - 1]);
    out.push_back(std::move(b));
  }
  return out;
}

Subscription Store::subscribe(EventConsumer consumer) {
  auto sub = std::make_shared<detail::Subscriber>(std::move(consumer));
  std::lock_guard lock(subscribers_mutex_);
  subscribers_.push_back(sub);
  return Subscription(sub);
}

}  // namespace chaingraph::kg
