use primstab::word::{canonical_class, cyclic_reduce, cyclic_subword_occurs, power, CyclicWord, Letter, Word};
use proptest::prelude::*;

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..2 * rank).prop_map(Letter::from_key), 0..max_len)
}

proptest! {
    #[test]
    fn reduction_is_idempotent(ls in letters(3, 24)) {
        let w = Word::new(&ls, 3).unwrap();
        prop_assert_eq!(Word::new(w.letters(), 3).unwrap(), w.clone());
        for pair in w.letters().windows(2) {
            prop_assert_ne!(pair[0], pair[1].inverse());
        }
    }

    #[test]
    fn inverse_cancels(ls in letters(3, 24)) {
        let w = Word::new(&ls, 3).unwrap();
        prop_assert!(w.concat(&w.inverse()).unwrap().is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn cyclic_reduction_recovers_the_word(ls in letters(2, 20)) {
        let w = Word::new(&ls, 2).unwrap();
        prop_assume!(!w.is_empty());
        let (c, u) = cyclic_reduce(&w).unwrap();
        let back = u.concat(&c.to_word()).unwrap().concat(&u.inverse()).unwrap();
        prop_assert_eq!(back, w.clone());
        prop_assert_eq!(c.exponent_sums(), w.exponent_sums());
    }

    #[test]
    fn canonical_class_is_rotation_and_inversion_invariant(ls in letters(2, 12), k in 0usize..12) {
        let w = Word::new(&ls, 2).unwrap();
        prop_assume!(!w.is_empty());
        let (c, _) = cyclic_reduce(&w).unwrap();
        let n = c.len();
        let mut rotated = c.letters().to_vec();
        rotated.rotate_left(k % n);
        let r = CyclicWord::new(&rotated, 2).unwrap();
        prop_assert_eq!(&r, &c);
        prop_assert_eq!(canonical_class(&c.inverse(), true), canonical_class(&c, true));
    }

    #[test]
    fn powers_contain_their_base(ls in letters(2, 8), k in 1usize..4) {
        let w = Word::new(&ls, 2).unwrap();
        prop_assume!(!w.is_empty());
        let (c, _) = cyclic_reduce(&w).unwrap();
        let p = power(&c, k).unwrap();
        prop_assert_eq!(p.len(), k * c.len());
        prop_assert!(cyclic_subword_occurs(&c, &p).unwrap());
        prop_assert!(cyclic_subword_occurs(&c, &c.to_word()).unwrap());
    }
}
