package corpus.sort;

import java.util.List;

public class Sorting {

    public static void bubbleSort(int[] arr) {
        int n = arr.length;
        for (int i = 0; i < n - 1; i++) {
            for (int j = 0; j < n - i - 1; j++) {
                if (arr[j] > arr[j + 1]) {
                    int temp = arr[j];
                    arr[j] = arr[j + 1];
                    arr[j + 1] = temp;
                }
            }
        }
    }

    public void sortWithFlag(double[] data) {
        boolean swapped = true;
        int pass = 0;
        while (swapped) {
            swapped = false;
            for (int k = 0; k < data.length - 1 - pass; k++) {
                if (data[k] > data[k + 1]) {
                    double t = data[k];
                    data[k] = data[k + 1];
                    data[k + 1] = t;
                    swapped = true;
                }
            }
            pass++;
        }
    }

    static <T extends Comparable<T>> void sortGeneric(T[] items) {
        for (int i = items.length - 1; i > 0; i--) {
            for (int j = 0; j < i; j++) {
                if (items[j].compareTo(items[j + 1]) > 0) {
                    T tmp = items[j];
                    items[j] = items[j + 1];
                    items[j + 1] = tmp;
                }
            }
        }
    }

    public static void sortList(List<Integer> list) {
        int size = list.size();
        for (int i = 0; i < size; i++) {
            for (int j = 1; j < size - i; j++) {
                if (list.get(j - 1) > list.get(j)) {
                    Integer temp = list.get(j - 1);
                    list.set(j - 1, list.get(j));
                    list.set(j, temp);
                }
            }
        }
    }

    void order(int[] a) {
        for (int x = 0; x < a.length; x++) {
            for (int y = 0; y < a.length - 1; y++) {
                if (a[y] < a[y + 1]) {
                    int h = a[y];
                    a[y] = a[y + 1];
                    a[y + 1] = h;
                }
            }
        }
    }

    public static int[] bubble(int[] input) {
        int[] arr = input.clone();
        int length = arr.length;
        int temp;
        for (int i = 0; i < length; i++) {
            for (int j = 1; j < (length - i); j++) {
                if (arr[j - 1] > arr[j]) {
                    temp = arr[j - 1];
                    arr[j - 1] = arr[j];
                    arr[j] = temp;
                }
            }
        }
        return arr;
    }

    public static void sortStrings(String[] words) {
        boolean changed;
        do {
            changed = false;
            for (int i = 0; i + 1 < words.length; i++) {
                if (words[i].compareToIgnoreCase(words[i + 1]) > 0) {
                    String w = words[i];
                    words[i] = words[i + 1];
                    words[i + 1] = w;
                    changed = true;
                }
            }
        } while (changed);
    }

    public static void bubbleSortDescending(long[] values) {
        for (int i = 0; i < values.length; i++) {
            for (int j = values.length - 1; j > i; j--) {
                if (values[j] > values[j - 1]) {
                    long swap = values[j];
                    values[j] = values[j - 1];
                    values[j - 1] = swap;
                }
            }
        }
    }

    public static void xorSort(int[] v) {
        for (int i = 0; i < v.length; i++) {
            for (int j = 0; j < v.length - i - 1; j++) {
                if (v[j] > v[j + 1]) {
                    v[j] ^= v[j + 1];
                    v[j + 1] ^= v[j];
                    v[j] ^= v[j + 1];
                }
            }
        }
    }

    public static void sortRecursive(int[] arr, int n) {
        if (n == 1) {
            return;
        }
        for (int i = 0; i < n - 1; i++) {
            if (arr[i] > arr[i + 1]) {
                int temp = arr[i];
                arr[i] = arr[i + 1];
                arr[i + 1] = temp;
            }
        }
        sortRecursive(arr, n - 1);
    }
}
