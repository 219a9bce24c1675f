use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

/// Write-once memo table, safe for concurrent readers. Two threads racing on
/// the same key may both compute the value; the first insert wins, and since
/// values are pure functions of the key the loser's copy is identical.
pub struct SliceCache<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K, V> Default for SliceCache<K, V> {
    fn default() -> Self {
        SliceCache { map: RwLock::new(HashMap::new()) }
    }
}

impl<K: Hash + Eq + Clone, V> SliceCache<K, V> {
    pub fn get_or_insert_with(&self, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Arc::clone(v);
        }
        let v = Arc::new(f());
        Arc::clone(self.map.write().unwrap().entry(key.clone()).or_insert(v))
    }
}
