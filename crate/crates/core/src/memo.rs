use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, LazyLock, Mutex};

pub(crate) type Cache<K, V> = LazyLock<Mutex<HashMap<K, Arc<V>>>>;

/// Looks `key` up in `cache`, computing it outside the lock on a miss so
/// that recursive computations may consult the same cache.
pub(crate) fn memo<K, V, F>(cache: &Cache<K, V>, key: K, compute: F) -> Arc<V>
where
    K: Eq + Hash + Clone,
    F: FnOnce() -> V,
{
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(compute());
    cache.lock().unwrap().entry(key).or_insert(v).clone()
}
